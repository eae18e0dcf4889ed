"""Prior distributions: radial Gaussians G_k^d and heavy-tailed controls.

``RadialGaussian(k, d)`` has density proportional to ``||x||^k exp(-||x||^2 / 2)``
on R^d; ``k = 0`` is the standard Gaussian.  Pareto and Student-t priors are
heavy-tailed controls for the tail estimators.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .errors import ParameterError
from . import rng as _rng

RADIAL_GAUSSIAN = "RadialGaussian"
PARETO = "Pareto"
STUDENT_T = "StudentT"
KINDS = (RADIAL_GAUSSIAN, PARETO, STUDENT_T)

# counter streams inside a block
_RADIUS_STREAM = 0
_DIRECTION_STREAM = 1


@dataclass(frozen=True)
class PriorSpec:
    kind: str
    dim: int = 1
    k: int = 0
    alpha: float = None
    nu: float = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParameterError(f"unknown prior kind {self.kind!r}; expected one of {KINDS}")
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise ParameterError(f"dim must be a positive integer, got {self.dim!r}")
        if self.kind == RADIAL_GAUSSIAN:
            if not isinstance(self.k, (int, np.integer)) or self.k < 0:
                raise ParameterError(f"k must be a nonnegative integer, got {self.k!r}")
        elif self.kind == PARETO:
            if self.alpha is None or not self.alpha > 0:
                raise ParameterError(f"Pareto alpha must be > 0, got {self.alpha!r}")
        elif self.kind == STUDENT_T:
            if self.nu is None or not self.nu > 0:
                raise ParameterError(f"StudentT nu must be > 0, got {self.nu!r}")

    @classmethod
    def radial_gaussian(cls, dim, k=0):
        return cls(RADIAL_GAUSSIAN, dim=dim, k=k)

    @classmethod
    def gaussian(cls, dim):
        return cls(RADIAL_GAUSSIAN, dim=dim, k=0)

    @classmethod
    def pareto(cls, alpha, dim=1):
        return cls(PARETO, dim=dim, alpha=float(alpha))

    @classmethod
    def student_t(cls, nu, dim=1):
        return cls(STUDENT_T, dim=dim, nu=float(nu))

    @property
    def radial_shape(self):
        """Gamma shape (k + d) / 2 of R^2 / 2."""
        return 0.5 * (self.k + self.dim)

    def to_dict(self):
        d = {"kind": self.kind, "dim": int(self.dim)}
        if self.kind == RADIAL_GAUSSIAN:
            d["k"] = int(self.k)
        elif self.kind == PARETO:
            d["alpha"] = self.alpha
        else:
            d["nu"] = self.nu
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        kind = d.pop("kind", None)
        unknown = set(d) - {"dim", "k", "alpha", "nu"}
        if unknown:
            raise ParameterError(f"unknown prior fields: {sorted(unknown)}")
        return cls(kind, **d)


@dataclass
class SampleBatch:
    data: np.ndarray
    seed: int
    prior: PriorSpec = field(repr=False)

    @property
    def n(self):
        return self.data.shape[0]

    def radii(self):
        return np.linalg.norm(self.data, axis=1)


def _radial_block(prior):
    shape = prior.radial_shape
    d = prior.dim

    def fill(seed, block, m):
        g = _rng.keyed_generator(seed, block, _RADIUS_STREAM)
        radius = np.sqrt(2.0 * g.standard_gamma(shape, size=m))
        if d == 1:
            sign = _rng.keyed_generator(seed, block, _DIRECTION_STREAM).integers(0, 2, size=m)
            return (radius * (2.0 * sign - 1.0))[:, None]
        z = _rng.keyed_generator(seed, block, _DIRECTION_STREAM).standard_normal((m, d))
        z /= np.linalg.norm(z, axis=1, keepdims=True)
        return z * radius[:, None]

    return fill


def _pareto_block(prior):
    inv_alpha = 1.0 / prior.alpha
    d = prior.dim

    def fill(seed, block, m):
        e = _rng.keyed_generator(seed, block, _RADIUS_STREAM).standard_exponential((m, d))
        # survival x^-alpha on [1, inf): X = exp(E / alpha)
        return np.exp(e * inv_alpha)

    return fill


def _student_block(prior):
    nu = prior.nu
    d = prior.dim

    def fill(seed, block, m):
        return _rng.keyed_generator(seed, block, _RADIUS_STREAM).standard_t(nu, size=(m, d))

    return fill


def sample_prior(prior, n, seed, threads=1):
    """Draw ``n`` rows from ``prior``.

    Radial-Gaussian rows are a uniform direction times a radius
    ``R = sqrt(2 * Gamma((k + d) / 2, 1))``.  Output depends only on
    ``(prior, n, seed)``; ``threads`` changes speed, not values.

    Returns
    -------
    SampleBatch
    """
    if not isinstance(prior, PriorSpec):
        raise ParameterError("prior must be a PriorSpec")
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ParameterError("seed must fit in an unsigned 64-bit integer")
    fill = {
        RADIAL_GAUSSIAN: _radial_block,
        PARETO: _pareto_block,
        STUDENT_T: _student_block,
    }[prior.kind](prior)
    out = np.empty((int(n), prior.dim), dtype=np.float64)
    _rng.fill_blocks(out, seed, fill, threads=threads)
    return SampleBatch(out, seed, prior)


def radius_cdf(prior, r):
    """CDF of ``||X||`` for ``X ~ G_k^d``: chi distribution with k + d degrees of freedom."""
    if prior.kind != RADIAL_GAUSSIAN:
        raise ParameterError("radius_cdf is defined for RadialGaussian priors only")
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ParameterError("radius must be nonnegative")
    out = special.gammainc(prior.radial_shape, 0.5 * r * r)
    return out if out.ndim else float(out)


def pareto_survival(alpha, x):
    x = np.asarray(x, dtype=float)
    return np.where(x >= 1.0, np.power(np.maximum(x, 1.0), -alpha), 1.0)
