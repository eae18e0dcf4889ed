"""Extreme-value diagnostics.

Shape parameters follow the usual GEV convention: Pareto(alpha) has
``xi = 1 / alpha``, Gumbel-domain laws have ``xi = 0`` and bounded laws
``xi < 0``.  Order statistics are indexed descending,
``X_(1) >= X_(2) >= ...``.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import DegenerateDataError, DomainError, ParameterError

HILL = "Hill"
PICKANDS = "Pickands"
MOMENT = "Moment"
ESTIMATORS = (HILL, PICKANDS, MOMENT)

DEFAULT_QUANTILES = (0.9, 0.99, 0.999, 0.9999)


@dataclass(frozen=True)
class TailEstimate:
    estimator: str
    k_order: int
    xi_hat: float
    stderr: float = None


def _top_descending(samples, m):
    """The ``m`` largest values, sorted descending (stable)."""
    x = np.asarray(samples, dtype=float).ravel()
    n = x.size
    if m > n:
        raise ParameterError(f"need {m} order statistics but only {n} samples")
    top = np.partition(x, n - m)[n - m:] if m < n else x.copy()
    return np.sort(top, kind="stable")[::-1]


def _log_spacings(samples, k_order):
    if k_order < 1:
        raise ParameterError("k_order must be >= 1")
    top = _top_descending(samples, k_order + 1)
    if top[-1] <= 0:
        raise DomainError("the top k_order + 1 order statistics must be strictly positive")
    # log of ratios rather than difference of logs: exact under power-of-two rescaling
    return np.log(top[:-1] / top[-1])


def hill(samples, k_order):
    """Hill estimate ``mean(log X_(i) - log X_(k+1))`` over the top ``k_order``."""
    k_order = int(k_order)
    xi = float(np.mean(_log_spacings(samples, k_order)))
    return TailEstimate(HILL, k_order, xi, xi / math.sqrt(k_order))


def pickands(samples, k_order):
    """Pickands estimate ``log((X_(k) - X_(2k)) / (X_(2k) - X_(4k))) / log 2``."""
    k_order = int(k_order)
    if k_order < 1:
        raise ParameterError("k_order must be >= 1")
    top = _top_descending(samples, 4 * k_order)
    x_k, x_2k, x_4k = top[k_order - 1], top[2 * k_order - 1], top[4 * k_order - 1]
    upper, lower = x_k - x_2k, x_2k - x_4k
    if upper <= 0 or lower <= 0:
        raise DegenerateDataError("Pickands quantile gaps must be nonzero")
    return TailEstimate(PICKANDS, k_order, float(math.log(upper / lower) / math.log(2.0)))


def moment_estimator(samples, k_order):
    """Dekkers-Einmahl-de Haan moment estimate, consistent for every real xi."""
    k_order = int(k_order)
    spacings = _log_spacings(samples, k_order)
    m1 = float(np.mean(spacings))
    m2 = float(np.mean(spacings * spacings))
    if m2 == 0.0:
        raise DegenerateDataError("all top order statistics are equal")
    return TailEstimate(MOMENT, k_order, m1 + 1.0 - 0.5 / (1.0 - m1 * m1 / m2))


_DISPATCH = {HILL: hill, PICKANDS: pickands, MOMENT: moment_estimator}


def estimate(samples, estimator, k_order):
    try:
        fn = _DISPATCH[estimator]
    except KeyError:
        raise ParameterError(f"unknown estimator {estimator!r}; expected one of {ESTIMATORS}") from None
    return fn(samples, k_order)


@dataclass(frozen=True)
class ScanEntry:
    k_order: int
    estimate: TailEstimate = None
    error: str = None


def tail_scan(samples, estimator, k_grid):
    """One estimate per ``k`` in ``k_grid``; failures are recorded, not raised."""
    x = np.asarray(samples, dtype=float).ravel()
    if estimator not in _DISPATCH:
        raise ParameterError(f"unknown estimator {estimator!r}")
    # one descending sort serves every k
    need = max(4 * int(k) if estimator == PICKANDS else int(k) + 1 for k in k_grid)
    top = _top_descending(x, min(need, x.size))
    out = []
    for k in k_grid:
        try:
            if estimator != PICKANDS and int(k) + 1 > x.size:
                raise ParameterError(f"k_order {k} too large for {x.size} samples")
            if estimator == PICKANDS and 4 * int(k) > x.size:
                raise ParameterError(f"4 * k_order = {4 * int(k)} exceeds {x.size} samples")
            out.append(ScanEntry(int(k), _DISPATCH[estimator](top, int(k))))
        except (ParameterError, DomainError, DegenerateDataError) as exc:
            out.append(ScanEntry(int(k), None, str(exc)))
    return out


@dataclass(frozen=True)
class EnvelopeBound:
    L: float
    f0: float
    k_plus: int
    gamma: float
    t: float
    t_star: float
    m_minus: float
    m_plus: float
    valid: bool


def envelope_onset(L, f0, k, d, gamma):
    """Smallest threshold above which the envelope's hypotheses on ``t`` start to hold."""
    k_plus = abs(k + d - 2)
    return max(f0 + 1.0, math.sqrt(k_plus + gamma) * L + abs(f0), math.sqrt(k_plus) * L + max(f0, 0.0))


def envelope(L, f0, k, d, gamma, t):
    """Bounds ``m_minus <= c_gamma(t) <= m_plus`` for an L-Lipschitz pushforward of G_k^d.

    With ``k_plus = |k + d - 2|``, ``t* = min(t, t - f0)`` and
    ``q = L^2 / t*^2``::

        m_minus = (1 - k_plus q) / (1 + (k_plus + gamma) q)
        m_plus  = (1 + k_plus q) / (1 - (k_plus + gamma) q)

    ``valid`` is False (and both bounds NaN) unless ``t > f0 + 1``,
    ``t > sqrt(k_plus + gamma) L + |f0|``, ``t*^2 > k_plus L^2`` and the
    ``m_plus`` denominator is positive.
    """
    k_plus = abs(int(k) + int(d) - 2)
    t_star = min(t, t - f0)
    valid = (
        L > 0
        and t > f0 + 1.0
        and t > math.sqrt(k_plus + gamma) * L + abs(f0)
        and t_star * t_star > k_plus * L * L
    )
    m_minus = m_plus = math.nan
    if valid:
        q = L * L / (t_star * t_star)
        denom = 1.0 - (k_plus + gamma) * q
        if denom > 0:
            m_minus = (1.0 - k_plus * q) / (1.0 + (k_plus + gamma) * q)
            m_plus = (1.0 + k_plus * q) / denom
        else:
            valid = False
    return EnvelopeBound(float(L), float(f0), k_plus, float(gamma), float(t), float(t_star),
                         m_minus, m_plus, bool(valid))


@dataclass
class ConditionalMomentCurve:
    gamma: float
    thresholds: np.ndarray
    c_hat: np.ndarray
    counts: np.ndarray
    se: np.ndarray
    envelope_lo: np.ndarray = field(default=None)
    envelope_hi: np.ndarray = field(default=None)
    valid: np.ndarray = field(default=None)

    def rows(self):
        """Tuples ``(t, c_hat, count, m_minus, m_plus, valid)``; absent values are None."""
        out = []
        for i, t in enumerate(self.thresholds):
            c = self.c_hat[i]
            lo = hi = None
            ok = False
            if self.valid is not None and self.valid[i]:
                lo, hi, ok = float(self.envelope_lo[i]), float(self.envelope_hi[i]), True
            out.append((float(t), None if np.isnan(c) else float(c), int(self.counts[i]), lo, hi, ok))
        return out


def default_thresholds(values, quantiles=DEFAULT_QUANTILES):
    return np.quantile(np.asarray(values, dtype=float), quantiles)


def conditional_moment_ratio(samples, gamma, thresholds, *, lip_bound=None, value_at_origin=0.0, k=0, d=1):
    """Empirical ``c_gamma(t) = E[(X / t)^gamma | X > t]`` on a threshold grid.

    Entries with no exceedances (or ``t <= 0``) are NaN with count recorded.
    Passing ``lip_bound`` (with ``value_at_origin``, ``k``, ``d`` of the
    pushforward) attaches the matching envelope at every threshold.
    """
    if gamma < 0:
        raise ParameterError("gamma must be >= 0")
    t = np.atleast_1d(np.asarray(thresholds, dtype=float))
    if t.size == 0 or np.any(np.diff(t) <= 0):
        raise ParameterError("thresholds must be a nonempty strictly increasing grid")
    x = np.sort(np.asarray(samples, dtype=float).ravel())
    n = x.size
    c_hat = np.full(t.size, np.nan)
    se = np.full(t.size, np.nan)
    counts = np.zeros(t.size, dtype=np.int64)
    for i, ti in enumerate(t):
        start = np.searchsorted(x, ti, side="right")
        counts[i] = n - start
        if counts[i] == 0 or ti <= 0:
            continue
        if gamma == 0:
            c_hat[i] = 1.0
            se[i] = 0.0
            continue
        vals = np.power(x[start:] / ti, gamma)
        c_hat[i] = float(np.mean(vals))
        if counts[i] > 1:
            se[i] = float(np.std(vals, ddof=1) / math.sqrt(counts[i]))
    curve = ConditionalMomentCurve(float(gamma), t, c_hat, counts, se)
    if lip_bound is not None and gamma > 0:
        bounds = [envelope(lip_bound, value_at_origin, k, d, gamma, ti) for ti in t]
        curve.envelope_lo = np.array([b.m_minus for b in bounds])
        curve.envelope_hi = np.array([b.m_plus for b in bounds])
        curve.valid = np.array([b.valid for b in bounds])
    return curve


def pareto_conditional_moment(alpha, gamma):
    """Closed form ``alpha / (alpha - gamma)`` of c_gamma for Pareto(alpha), any t >= 1."""
    if not gamma < alpha:
        return math.inf
    return alpha / (alpha - gamma)
