"""Sub-Gaussian concentration and Gaussian isoperimetry, checked by Monte Carlo."""

from dataclasses import dataclass
import math

import numpy as np
from scipy import special

from .errors import DegenerateDataError, ParameterError
from .lipschitz import evaluate
from .priors import RADIAL_GAUSSIAN, PriorSpec, sample_prior
from .quadrature import normal_quantile

MEAN = "Mean"
MEDIAN = "Median"
MIN_SAMPLES = 10_000
SLACK_SE = 3.0


def gaussian_tail(x):
    """Standard normal survival function ``P(Z > x)``."""
    out = 0.5 * special.erfc(np.asarray(x, dtype=float) / math.sqrt(2.0))
    return out if out.ndim else float(out)


def gaussian_cdf(x):
    return gaussian_tail(-np.asarray(x, dtype=float))


def binomial_se(p_hat, n):
    """Binomial standard error; at p_hat in {0, 1} the Wilson midpoint (z = 1) replaces p_hat."""
    p = np.asarray(p_hat, dtype=float)
    edge = (p == 0.0) | (p == 1.0)
    p_eff = np.where(edge, (p * n + 0.5) / (n + 1.0), p)
    return np.sqrt(p_eff * (1.0 - p_eff) / n)


def median_bound(eps, L):
    """Two-sided median concentration bound ``2 * Psi_bar(eps / L)``."""
    with np.errstate(divide="ignore"):
        return 2.0 * gaussian_tail(np.asarray(eps, dtype=float) / L)


def printed_bound(eps, L):
    """The exponent-2 form ``2 exp(-2 eps^2 / L^2)`` (not a valid bound; reported only)."""
    eps = np.asarray(eps, dtype=float)
    with np.errstate(divide="ignore"):
        return 2.0 * np.exp(-2.0 * eps * eps / (L * L))


@dataclass
class ConcentrationReport:
    center_kind: str
    center_value: float
    L: float
    n: int
    epsilons: np.ndarray
    p_hat: np.ndarray
    se: np.ndarray
    bound_median: np.ndarray
    bound_paper: np.ndarray
    violations_median: np.ndarray
    violations_paper: np.ndarray

    def rows(self):
        return [
            (float(e), float(p), float(s), float(bm), float(bp), bool(vm), bool(vp))
            for e, p, s, bm, bp, vm, vp in zip(
                self.epsilons, self.p_hat, self.se, self.bound_median, self.bound_paper,
                self.violations_median, self.violations_paper,
            )
        ]

    def summary(self):
        return {
            "center_kind": self.center_kind,
            "center_value": self.center_value,
            "L": self.L,
            "n": self.n,
            "median_bound_violations": int(np.sum(self.violations_median)),
            "exponent2_bound_violations": int(np.sum(self.violations_paper)),
        }


def concentration_report(values, L, epsilons, center_kind=MEDIAN):
    """Tail probabilities of ``|values - center|`` against both bound columns."""
    eps = np.atleast_1d(np.asarray(epsilons, dtype=float))
    if eps.size == 0:
        raise ParameterError("epsilon grid is empty")
    if np.any(eps <= 0):
        raise ParameterError("epsilons must be positive")
    v = np.asarray(values, dtype=float).ravel()
    if center_kind == MEAN:
        center = float(np.mean(v))
    elif center_kind == MEDIAN:
        center = float(np.median(v))
    else:
        raise ParameterError(f"center_kind must be {MEAN!r} or {MEDIAN!r}")
    dev = np.sort(np.abs(v - center))
    n = v.size
    p_hat = (n - np.searchsorted(dev, eps, side="left")) / n
    se = binomial_se(p_hat, n)
    b_med = median_bound(eps, L)
    b_pap = printed_bound(eps, L)
    return ConcentrationReport(
        center_kind, center, float(L), n, eps, p_hat, se, b_med, b_pap,
        p_hat > b_med + SLACK_SE * se, p_hat > b_pap + SLACK_SE * se,
    )


def concentration_check(fmap, prior, n, seed, epsilons, center_kind=MEDIAN, threads=1):
    """Sample ``f(X)`` for standard Gaussian ``X`` and tabulate tail probabilities.

    Nothing is asserted here; violation flags are data for the caller.
    """
    if prior.kind != RADIAL_GAUSSIAN or prior.k != 0:
        raise ParameterError("concentration_check needs a standard Gaussian prior (RadialGaussian, k = 0)")
    if n < MIN_SAMPLES:
        raise ParameterError(f"n must be at least {MIN_SAMPLES}")
    batch = sample_prior(prior, n, seed, threads=threads)
    return concentration_report(evaluate(fmap, batch), fmap.lip_bound, epsilons, center_kind)


# --- isoperimetry -----------------------------------------------------------

HALF_SPACE = "HalfSpace"
BALL = "Ball"
COMPLEMENT = "Complement"


@dataclass(frozen=True)
class BorelSetSpec:
    """``HalfSpace``: {<x, u> < a}; ``Ball``: {||x - c|| < r}; ``Complement``: {||x - c|| > r}."""

    kind: str
    dim: int
    a: float = 0.0
    direction: tuple = None
    center: tuple = None
    radius: float = 1.0

    def __post_init__(self):
        if self.dim < 1:
            raise ParameterError("dim must be positive")
        if self.kind == HALF_SPACE:
            u = np.zeros(self.dim) if self.direction is None else np.asarray(self.direction, dtype=float)
            if self.direction is None:
                u[0] = 1.0
            if u.shape != (self.dim,) or np.linalg.norm(u) == 0:
                raise ParameterError("half-space direction must be a nonzero vector of length dim")
            object.__setattr__(self, "direction", tuple(u / np.linalg.norm(u)))
        elif self.kind in (BALL, COMPLEMENT):
            c = np.zeros(self.dim) if self.center is None else np.asarray(self.center, dtype=float)
            if c.shape != (self.dim,):
                raise ParameterError("ball center must have length dim")
            if not self.radius > 0:
                raise ParameterError("ball radius must be positive")
            object.__setattr__(self, "center", tuple(c))
        else:
            raise ParameterError(f"unknown set kind {self.kind!r}")

    def distance(self, x):
        """Euclidean distance from each row of ``x`` to the set (0 inside)."""
        if self.kind == HALF_SPACE:
            return np.maximum(x @ np.asarray(self.direction) - self.a, 0.0)
        rho = np.linalg.norm(x - np.asarray(self.center), axis=1)
        if self.kind == BALL:
            return np.maximum(rho - self.radius, 0.0)
        return np.maximum(self.radius - rho, 0.0)

    def contains(self, x):
        if self.kind == HALF_SPACE:
            return x @ np.asarray(self.direction) < self.a
        rho = np.linalg.norm(x - np.asarray(self.center), axis=1)
        return rho < self.radius if self.kind == BALL else rho > self.radius

    def to_dict(self):
        d = {"kind": self.kind, "dim": self.dim}
        if self.kind == HALF_SPACE:
            d.update(a=self.a, direction=list(self.direction))
        else:
            d.update(center=list(self.center), radius=self.radius)
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


def isoperimetry_check(set_spec, epsilon, n, seed, threads=1):
    """Monte Carlo check of ``gamma(A_eps) >= Psi(Psi^-1(gamma(A)) + eps)``.

    ``se`` is the delta-method standard error of ``margin``, accounting for
    both estimated measures coming from the same sample.
    """
    if not epsilon > 0:
        raise ParameterError("epsilon must be positive")
    if set_spec.dim > 3:
        raise ParameterError("isoperimetry_check supports dimension <= 3")
    batch = sample_prior(PriorSpec.gaussian(set_spec.dim), n, seed, threads=threads)
    in_a = set_spec.contains(batch.data)
    in_eps = set_spec.distance(batch.data) < epsilon
    m_a = float(np.mean(in_a))
    m_eps = float(np.mean(in_eps))
    if m_a <= 0.0 or m_a >= 1.0:
        raise DegenerateDataError(f"estimated measure of A is {m_a}; inverse normal CDF undefined")
    q = normal_quantile(m_a)
    rhs = gaussian_cdf(q + epsilon)
    # d rhs / d m_a
    slope = math.exp(-0.5 * (q + epsilon) ** 2 + 0.5 * q * q)
    z = in_eps.astype(float) - slope * in_a.astype(float)
    se = float(np.std(z, ddof=1) / math.sqrt(n))
    return {
        "epsilon": float(epsilon),
        "measure_A": m_a,
        "measure_A_eps": m_eps,
        "rhs": float(rhs),
        "margin": m_eps - float(rhs),
        "se": se,
    }
