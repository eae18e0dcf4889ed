"""Numerical checks of tail limits for Lipschitz pushforwards of radial-Gaussian priors."""

__version__ = "0.1.0"

from .errors import (
    AccuracyError,
    CertificationError,
    DegenerateDataError,
    DomainError,
    ParameterError,
    ValidationError,
)
from .priors import PriorSpec, SampleBatch, radius_cdf, sample_prior
from .lipschitz import (
    LipschitzMap,
    MLPArchitecture,
    build_map,
    certificate_check,
    evaluate,
    spectral_norm,
    zoo,
)
from .evt import (
    ConditionalMomentCurve,
    EnvelopeBound,
    TailEstimate,
    conditional_moment_ratio,
    envelope,
    hill,
    moment_estimator,
    pickands,
    tail_scan,
)
from .quadrature import (
    QuadratureSpec,
    hyperspherical_expectation,
    normal_quantile,
    radial_expectation,
)
from .concentration import (
    BorelSetSpec,
    ConcentrationReport,
    concentration_check,
    gaussian_tail,
    isoperimetry_check,
)
