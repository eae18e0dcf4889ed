"""Deterministic quadrature oracles for radial-Gaussian expectations.

``integrate`` is a globally adaptive Gauss-Kronrod (7, 15) rule that accepts
vector-valued integrands, which lets the hyperspherical integrals below
evaluate whole batches of directions per call.
"""

from dataclasses import dataclass
import heapq
import math

import numpy as np
from scipy import special

from .errors import AccuracyError, ParameterError

# Kronrod 15-point nodes on [-1, 1] (non-negative half) with Kronrod and embedded Gauss weights
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
_KRONROD = np.concatenate([_WK[:-1], _WK[::-1]])
_GAUSS = np.zeros(15)
_GAUSS[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], _WG[::-1]])


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ParameterError("abs_tol and rel_tol must be positive")
        if self.max_subdivisions < 1:
            raise ParameterError("max_subdivisions must be >= 1")


DEFAULT_SPEC = QuadratureSpec()


def _gk15(f, a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    vals = np.asarray(f(mid + half * _NODES), dtype=float)
    k = half * np.tensordot(_KRONROD, vals, axes=(0, 0))
    g = half * np.tensordot(_GAUSS, vals, axes=(0, 0))
    return k, np.abs(k - g)


def integrate(f, a, b, spec=DEFAULT_SPEC, points=()):
    """Adaptive integral of ``f`` over ``[a, b]``.

    ``f`` maps a 1-D array of 15 nodes to an array whose leading axis
    matches the nodes; trailing axes are integrated componentwise.
    ``points`` are interior breakpoints (e.g. discontinuities).

    Returns ``(value, error_estimate)``.
    """
    edges = [a] + sorted(p for p in points if a < p < b) + [b]
    heap = []
    total = None
    err_total = None
    counter = 0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, err = _gk15(f, lo, hi)
        total = val if total is None else total + val
        err_total = err if err_total is None else err_total + err
        heapq.heappush(heap, (-float(np.max(err)), counter, lo, hi, val, err))
        counter += 1

    def done():
        return np.all(err_total <= np.maximum(spec.abs_tol, spec.rel_tol * np.abs(total)))

    n_split = 0
    while not done():
        if n_split >= spec.max_subdivisions:
            raise AccuracyError(
                f"no convergence after {n_split} subdivisions",
                estimate=total, error=err_total,
            )
        _, _, lo, hi, val, err = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        total = total - val + v1 + v2
        err_total = err_total - err + e1 + e2
        heapq.heappush(heap, (-float(np.max(e1)), counter, lo, mid, v1, e1))
        heapq.heappush(heap, (-float(np.max(e2)), counter + 1, mid, hi, v2, e2))
        counter += 2
        n_split += 1
    # recompute from the leaves to shed cancellation drift from the running sums
    total = sum(item[4] for item in heap)
    err_total = sum(item[5] for item in heap)
    return total, err_total


def _log_radial_weight(r, k, d):
    p = k + d - 1
    with np.errstate(divide="ignore"):
        logr = np.log(r)
    return (p * logr if p else 0.0) - 0.5 * r * r


def _radial_integral(g, k, d, spec, points=()):
    """``int_0^inf g(r) r^(k+d-1) exp(-r^2/2) dr`` via ``r = s / (1 - s)``."""

    def h(s):
        r = s / (1.0 - s)
        jac = 1.0 / (1.0 - s) ** 2
        w = np.exp(_log_radial_weight(r, k, d)) * jac
        vals = np.asarray(g(r), dtype=float)
        return vals * w.reshape((-1,) + (1,) * (vals.ndim - 1))

    s_points = [p / (1.0 + p) for p in points if p > 0]
    return integrate(h, 0.0, 1.0, spec, s_points)[0]


def radial_normalizer(k, d, spec=DEFAULT_SPEC):
    return _radial_integral(lambda r: np.ones_like(r), k, d, spec)


def radial_expectation(g, k, d, spec=DEFAULT_SPEC, points=()):
    """``E[g(R)]`` for the radius of G_k^d, with density proportional to ``r^(k+d-1) exp(-r^2/2)``.

    ``g`` takes a 1-D array of radii.  ``points`` lists radii where ``g`` is
    not smooth.
    """
    _check_kd(k, d)
    return _radial_integral(g, k, d, spec, points) / radial_normalizer(k, d, spec)


def _check_kd(k, d):
    if int(k) != k or k < 0 or int(d) != d or d < 1:
        raise ParameterError("k must be a nonnegative integer and d a positive integer")


def sphere_point(angles, d):
    """Unit vectors from hyperspherical angles, ``angles`` shaped (..., d - 1).

    ``x_1 = cos t_1``, ``x_j = sin t_1 ... sin t_{j-1} cos t_j``,
    ``x_d = sin t_1 ... sin t_{d-1}``.
    """
    angles = np.asarray(angles, dtype=float)
    out = np.empty(angles.shape[:-1] + (d,))
    prod = np.ones(angles.shape[:-1])
    for j in range(d - 1):
        out[..., j] = prod * np.cos(angles[..., j])
        prod = prod * np.sin(angles[..., j])
    out[..., d - 1] = prod
    return out


def _directional_radial(g, k, d, spec, directions):
    """Radial integrals along each of ``directions`` (m, d) in one vector-valued pass."""
    dirs = np.asarray(directions, dtype=float)
    m = dirs.shape[0]

    def gr(r):
        pts = r[:, None, None] * dirs[None, :, :]
        return np.asarray(g(pts.reshape(-1, d)), dtype=float).reshape(r.size, m)

    return _radial_integral(gr, k, d, spec)


def hyperspherical_expectation(g, k, d, spec=DEFAULT_SPEC):
    """``E[g(X)]`` for ``X ~ G_k^d`` by iterated quadrature, d in {2, 3}.

    Angular weights are ``sin(t_1)^(d-2)``; the angular and radial
    normalization is obtained by dividing by the same integral of ``g = 1``.
    ``g`` maps an (m, d) array to m values.
    """
    _check_kd(k, d)
    if d not in (2, 3):
        raise ParameterError("hyperspherical_expectation supports d in {2, 3}")
    return _hyperspherical_integral(g, k, d, spec) / _hyperspherical_integral(
        lambda x: np.ones(x.shape[0]), k, d, spec
    )


def _hyperspherical_integral(g, k, d, spec):
    two_pi = 2.0 * math.pi
    if d == 2:
        def f_theta(theta):
            return _directional_radial(g, k, d, spec, sphere_point(theta[:, None], 2))

        return integrate(f_theta, 0.0, two_pi, spec)[0]

    def f_theta1(theta1):
        def f_theta2(theta2):
            grid = np.stack(np.broadcast_arrays(theta1[None, :], theta2[:, None]), axis=-1)
            dirs = sphere_point(grid.reshape(-1, 2), 3)
            return _directional_radial(g, k, d, spec, dirs).reshape(theta2.size, theta1.size)

        return integrate(f_theta2, 0.0, two_pi, spec)[0] * np.sin(theta1)

    return integrate(f_theta1, 0.0, math.pi, spec)[0]


def normal_quantile(p):
    """Inverse standard normal CDF."""
    p_arr = np.asarray(p, dtype=float)
    if np.any((p_arr <= 0) | (p_arr >= 1)) or np.any(np.isnan(p_arr)):
        raise ParameterError("normal_quantile needs p in (0, 1)")
    out = special.ndtri(p_arr)
    return out if out.ndim else float(out)
