"""
Quadrature oracles
==================

Expectations under G_k^d reduce to a radial integral (times an angular one
when the integrand is not radial).  A vector-valued Gauss-Kronrod rule handles
both; Monte Carlo agrees within its standard error.
"""

import math

import numpy as np

from liptail import PriorSpec, hyperspherical_expectation, radial_expectation, sample_prior
from liptail.runner import INTEGRAND_BATTERY

# E[R^2] = k + d for the radius of G_k^d
print("E[R^2] under G_2^3:", radial_expectation(lambda r: r * r, 2, 3))

k, d = 1, 3
x = sample_prior(PriorSpec.radial_gaussian(d, k), 1_000_000, seed=5).data
for name, g in INTEGRAND_BATTERY.items():
    oracle = hyperspherical_expectation(g, k, d)
    v = g(x)
    se = v.std(ddof=1) / math.sqrt(v.size)
    z = (v.mean() - oracle) / se if se > 0 else 0.0
    print(f"{name:12s} quadrature {oracle: .8f}   Monte Carlo {v.mean(): .8f}   z {z:+.2f}")

# Under the standard Gaussian, E[cos x1 cos x2] = exp(-1)
print(hyperspherical_expectation(INTEGRAND_BATTERY["cos_product"], 0, 2), np.exp(-1.0))
