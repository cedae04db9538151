import math

import numpy as np
import pytest
from scipy.optimize import brentq
from scipy.special import polygamma

from brownian_polymer import DomainError
from brownian_polymer.models import (
    EULER_GAMMA,
    FreeEnergyBranch,
    conjugate_f_minus_one,
    conjugate_f_minus_one_point,
    free_energy,
    free_energy_closed_form,
    free_energy_derivative,
    gamma_continuity_bound,
    gamma_shape,
    rate_lambda,
    rate_lambda_derivative,
    rate_lambda_m,
    rate_lambda_star,
    small_beta_series,
)


def _scipy_free_energy(beta: float) -> float:
    """a * trigamma(a) - digamma(a) - log(trigamma(a)) at trigamma(a) = beta**2, solved with scipy."""
    a = brentq(lambda u: float(polygamma(1, u)) - beta * beta, 1e-6, 1e6, xtol=1e-14, rtol=1e-15)
    trigamma_a = float(polygamma(1, a))
    return a * trigamma_a - float(polygamma(0, a)) - math.log(trigamma_a)


def test_free_energy_at_zero():
    point = free_energy(0.0)
    assert point.value == 1.0
    assert point.maximizer_a is None
    assert point.branch is FreeEnergyBranch.SMALL_BETA_SERIES


@pytest.mark.parametrize("beta", [0.3, 1.0, 2.0, 5.0])
def test_free_energy_against_scipy(beta):
    point = free_energy(beta)
    assert point.branch is FreeEnergyBranch.EXACT
    assert point.value == pytest.approx(_scipy_free_energy(beta), abs=1e-9)


def test_free_energy_is_even():
    for beta in (0.5, 1.0, 3.0):
        assert free_energy(-beta).value == free_energy(beta).value


def test_free_energy_at_one():
    point = free_energy(1.0)
    # trigamma(a) = 1 leaves f(1) = a - digamma(a)
    assert point.value == pytest.approx(point.maximizer_a - float(polygamma(0, point.maximizer_a)), abs=1e-12)


def test_closed_form_rejects_zero():
    with pytest.raises(DomainError):
        free_energy_closed_form(0.0)


def test_branches_meet_at_the_threshold():
    for beta in (5e-5, 1e-4, 2e-4):
        assert free_energy_closed_form(beta).value == pytest.approx(small_beta_series(beta), abs=1e-9)


def test_free_energy_rejects_non_finite():
    with pytest.raises(DomainError):
        free_energy(math.inf)


def test_asymptotic_slope():
    slopes = [free_energy(beta).value / beta for beta in (10.0, 1e2, 1e3, 1e4)]
    assert all(later > earlier for earlier, later in zip(slopes, slopes[1:]))
    assert abs(slopes[-1] - 2.0) <= 0.05


@pytest.mark.parametrize("beta", [0.0, 0.5, 1.0, 4.0])
def test_free_energy_derivative_matches_central_difference(beta):
    step = 1e-5
    central = (free_energy(beta + step).value - free_energy(beta - step).value) / (2.0 * step)
    assert free_energy_derivative(beta) == pytest.approx(central, abs=1e-6)


def test_gamma_shape_closed_value():
    # trigamma(1) = pi**2 / 6, so the maximizer is a = 1
    assert gamma_shape(-(math.pi**2) / 6.0) == pytest.approx(math.pi**2 / 6.0 + EULER_GAMMA, abs=1e-12)


def test_gamma_shape_domain():
    with pytest.raises(DomainError):
        gamma_shape(0.0)


def test_gamma_continuity_bound():
    for x in (-5.0, -1.0, -0.1):
        for delta in (1e-3, 0.5, 2.0):
            gap = abs(gamma_shape(x - delta) - gamma_shape(x))
            assert gap <= gamma_continuity_bound(x, delta) + 1e-12


def test_gamma_continuity_bound_domain():
    with pytest.raises(DomainError):
        gamma_continuity_bound(1.0, 0.5)


def test_rate_lambda_values():
    assert rate_lambda(0.0) == 0.0
    assert rate_lambda(1.0) == pytest.approx(EULER_GAMMA, abs=1e-14)
    assert rate_lambda(-2.0) == rate_lambda(2.0)


def test_rate_lambda_derivative_matches_central_difference():
    step = 1e-6
    for theta in (0.2, 1.0, 3.0):
        central = (rate_lambda(theta + step) - rate_lambda(theta - step)) / (2.0 * step)
        assert rate_lambda_derivative(theta) == pytest.approx(central, abs=1e-6)


def test_rate_lambda_m():
    assert rate_lambda_m(1.0, 0.0) == 0.0
    assert rate_lambda_m(1.0, 1.0) == pytest.approx(-1.0, abs=1e-14)
    with pytest.raises(DomainError):
        rate_lambda_m(1.0, -1.0)
    with pytest.raises(DomainError):
        rate_lambda_m(0.0, 1.0)


def test_rate_lambda_star_at_zero():
    point = rate_lambda_star(0.0)
    assert point.value == 0.0
    assert point.optimizer_theta == 0.0


def test_rate_lambda_star_fenchel():
    thetas = np.linspace(-10.0, 10.0, 2001)
    for x in (-1.5, 0.3, 2.0):
        point = rate_lambda_star(x)
        lower = max(x * theta - rate_lambda(theta) for theta in thetas)
        assert point.value >= lower - 1e-6 * max(1.0, abs(lower))
        assert point.value == pytest.approx(x * point.optimizer_theta - rate_lambda(point.optimizer_theta), abs=1e-10)


def test_conjugate_f_minus_one():
    assert conjugate_f_minus_one(0.0) == 0.0
    assert conjugate_f_minus_one(-1.0) == conjugate_f_minus_one(1.0)
    assert conjugate_f_minus_one(1.0) > 0.0


@pytest.mark.parametrize("x", [2.0, -2.5, 10.0])
def test_conjugate_f_minus_one_infinite_beyond_slope(x):
    point = conjugate_f_minus_one_point(x)
    assert point.value == math.inf
    assert point.optimizer_theta == math.copysign(math.inf, x)
