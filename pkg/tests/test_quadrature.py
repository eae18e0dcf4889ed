import math

import numpy as np
import pytest
from scipy import integrate as sp_integrate
from scipy import special

from liptail import AccuracyError, ParameterError, QuadratureSpec, gaussian_tail
from liptail.quadrature import (
    hyperspherical_expectation,
    integrate,
    normal_quantile,
    radial_expectation,
    sphere_point,
)
from oracles import normal_quantile_bisection, radial_moment_quad


@pytest.mark.parametrize("f,a,b", [
    (np.sin, 0.0, math.pi),
    (lambda x: np.exp(-x * x), -3.0, 2.0),
    (lambda x: np.sqrt(x), 0.0, 1.0),
    (lambda x: 1.0 / (1.0 + 25 * x * x), -1.0, 1.0),
])
def test_integrate_against_quadpack(f, a, b):
    ref = sp_integrate.quad(f, a, b, epsabs=1e-13, epsrel=1e-13)[0]
    val, err = integrate(f, a, b)
    assert val == pytest.approx(ref, rel=1e-8, abs=1e-10)
    assert err <= max(1e-10, 1e-8 * abs(val))


def test_integrate_vector_valued():
    def f(x):
        return np.stack([np.cos(x), x**2, np.ones_like(x)], axis=1)

    val, _ = integrate(f, 0.0, 1.0)
    np.testing.assert_allclose(val, [math.sin(1.0), 1 / 3, 1.0], rtol=1e-12)


def test_integrate_breakpoint_for_jump():
    val, _ = integrate(lambda x: (x > 0.3).astype(float), 0.0, 1.0, points=[0.3])
    assert val == pytest.approx(0.7, abs=1e-14)


def test_integrate_accuracy_error_carries_estimate():
    with pytest.raises(AccuracyError) as info:
        integrate(lambda x: np.abs(x - 0.123456789) ** -0.9, 0.0, 1.0, QuadratureSpec(max_subdivisions=5))
    assert info.value.estimate is not None and info.value.error is not None


def test_spec_validation():
    with pytest.raises(ParameterError):
        QuadratureSpec(abs_tol=0.0)
    with pytest.raises(ParameterError):
        QuadratureSpec(max_subdivisions=0)
    assert QuadratureSpec() == QuadratureSpec(1e-10, 1e-8, 2000)


def test_radial_examples():
    assert radial_expectation(lambda r: r * r, 0, 2) == pytest.approx(2.0, rel=1e-10)
    for k in range(3):
        for d in (1, 2, 3, 16):
            assert radial_expectation(np.ones_like, k, d) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("k,d", [(0, 1), (1, 2), (2, 3), (0, 16), (2, 16)])
def test_radial_chi_moments(k, d):
    nu = k + d
    mean_r = math.sqrt(2) * math.exp(special.gammaln((nu + 1) / 2) - special.gammaln(nu / 2))
    assert radial_expectation(lambda r: r, k, d) == pytest.approx(mean_r, rel=1e-9)
    assert radial_expectation(lambda r: r**2, k, d) == pytest.approx(nu, rel=1e-9)


def test_radial_conditional_moment_oracle():
    num = radial_expectation(lambda r: (r > 3) * (r / 3) ** 0.5, 0, 2, points=[3.0])
    den = radial_expectation(lambda r: (r > 3) * 1.0, 0, 2, points=[3.0])
    assert den == pytest.approx(math.exp(-4.5), rel=1e-9)
    assert num / den == pytest.approx(radial_moment_quad(lambda r: (r / 3) ** 0.5, 0, 2, 3.0), rel=1e-9)


def test_sphere_point_unit_norm():
    ang = np.random.default_rng(0).uniform(0, 3, size=(100, 2))
    np.testing.assert_allclose(np.linalg.norm(sphere_point(ang, 3), axis=1), 1.0, rtol=1e-14)
    np.testing.assert_allclose(sphere_point(np.array([[0.3]]), 2), [[math.cos(0.3), math.sin(0.3)]])


@pytest.mark.parametrize("k", [0, 1, 2])
@pytest.mark.parametrize("d", [2, 3])
def test_hyperspherical_closed_forms(k, d):
    nu = k + d
    assert hyperspherical_expectation(lambda x: np.sum(x * x, axis=1), k, d) == pytest.approx(nu, rel=1e-9)
    assert hyperspherical_expectation(lambda x: x[:, 0], k, d) == pytest.approx(0.0, abs=1e-10)
    assert hyperspherical_expectation(lambda x: np.ones(x.shape[0]), k, d) == pytest.approx(1.0, abs=1e-10)
    mean_r = math.sqrt(2) * math.exp(special.gammaln((nu + 1) / 2) - special.gammaln(nu / 2))
    mean_abs_u1 = 2 / math.pi if d == 2 else 0.5
    assert hyperspherical_expectation(lambda x: np.abs(x[:, 0]), k, d) == pytest.approx(
        mean_r * mean_abs_u1, rel=1e-8)


def test_hyperspherical_gaussian_characteristic():
    # E[cos X1 cos X2] = exp(-1) for the standard Gaussian
    val = hyperspherical_expectation(lambda x: np.cos(x[:, 0]) * np.cos(x[:, 1]), 0, 3)
    assert val == pytest.approx(math.exp(-1.0), rel=1e-8)


def test_hyperspherical_dimension_guard():
    with pytest.raises(ParameterError):
        hyperspherical_expectation(lambda x: x[:, 0], 0, 4)


def test_normal_quantile_examples():
    assert normal_quantile(0.5) == 0.0
    phi1 = 1.0 - gaussian_tail(1.0)
    assert phi1 == pytest.approx(0.8413447, abs=1e-7)
    assert normal_quantile(phi1) == pytest.approx(1.0, abs=1e-9)
    ref = normal_quantile_bisection(0.39347)
    assert normal_quantile(0.39347) == pytest.approx(ref, abs=1e-9)
    assert ref == pytest.approx(-0.270286, abs=1e-6)


def test_normal_quantile_round_trip_grid():
    x = np.linspace(-6, 6, 1201)
    back = normal_quantile(1.0 - gaussian_tail(x))
    assert np.max(np.abs(back - x)) <= 1e-8


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5, float("nan")])
def test_normal_quantile_domain(p):
    with pytest.raises(ParameterError):
        normal_quantile(p)
