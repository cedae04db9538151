import math

import numpy as np
import pytest
from scipy.special import polygamma, zetac

from brownian_polymer import DomainError
from brownian_polymer.models import (
    EULER_GAMMA,
    PolygammaMethod,
    digamma,
    digamma_minus_log,
    digamma_series,
    evaluate_polygamma,
    inv_trigamma,
    loggamma_series,
    tetragamma,
    trigamma,
    trigamma_series,
    x_trigamma_excess,
    zeta_minus_one,
)
from brownian_polymer.testing import bisection_inv_trigamma

GRID = np.logspace(-3, 4, 200)


def test_closed_values_at_one():
    assert digamma(1.0) == pytest.approx(-EULER_GAMMA, abs=1e-14)
    assert trigamma(1.0) == pytest.approx(math.pi**2 / 6.0, abs=1e-14)


def test_digamma_at_one_half():
    assert digamma(0.5) == pytest.approx(-EULER_GAMMA - 2.0 * math.log(2.0), abs=1e-13)


@pytest.mark.parametrize("order", [0, 1, 2])
def test_against_scipy_polygamma(order):
    function = {0: digamma, 1: trigamma, 2: tetragamma}[order]
    for x in GRID:
        expected = float(polygamma(order, x))
        assert function(x) == pytest.approx(expected, rel=1e-11, abs=1e-13), x


def test_tetragamma_strictly_negative():
    assert all(tetragamma(x) < 0 for x in GRID)


@pytest.mark.parametrize("bad_input", [0.0, -1.0, math.inf, math.nan])
def test_digamma_domain_error(bad_input):
    with pytest.raises(DomainError):
        digamma(bad_input)


def test_zeta_minus_one_against_scipy():
    for n in range(2, 30):
        assert zeta_minus_one(n) == pytest.approx(float(zetac(n)), rel=1e-12)


def test_zeta_minus_one_rejects_non_integers():
    with pytest.raises(DomainError):
        zeta_minus_one(2.5)
    with pytest.raises(DomainError):
        zeta_minus_one(1)


def test_loggamma_series_values():
    assert loggamma_series(0.0, 10) == 0.0
    assert loggamma_series(0.5, 200) == pytest.approx(math.lgamma(1.5), abs=1e-12)
    assert loggamma_series(-0.5, 200) == pytest.approx(math.lgamma(0.5), abs=1e-12)


@pytest.mark.parametrize("z", [2.0, -1.0, -2.5])
def test_loggamma_series_outside_disc(z):
    with pytest.raises(DomainError):
        loggamma_series(z, 10)


def test_series_agree_with_recurrence():
    for x in np.linspace(0.25, 1.75, 13):
        assert digamma_series(x) == pytest.approx(digamma(x), abs=1e-10)
        assert trigamma_series(x) == pytest.approx(trigamma(x), abs=1e-10)


def test_evaluate_polygamma_reports_shifts():
    result = evaluate_polygamma(0.5, order=1)
    assert result.method is PolygammaMethod.RECURRENCE_PLUS_ASYMPTOTIC
    assert result.shift_count == 10
    assert result.value == trigamma(0.5)

    assert evaluate_polygamma(25.0, order=0).shift_count == 0


def test_evaluate_polygamma_power_series():
    result = evaluate_polygamma(1.0, order=0, method=PolygammaMethod.POWER_SERIES)
    assert result.value == pytest.approx(-EULER_GAMMA, abs=1e-12)
    with pytest.raises(DomainError):
        evaluate_polygamma(5.0, order=0, method=PolygammaMethod.POWER_SERIES)


def test_evaluate_polygamma_bad_order():
    with pytest.raises(ValueError):
        evaluate_polygamma(1.0, order=3)


def test_cancellation_free_helpers_at_large_arguments():
    assert digamma_minus_log(1e6) == pytest.approx(-0.5e-6, rel=1e-6)
    assert x_trigamma_excess(1e6) == pytest.approx(0.5e-6, rel=1e-6)


def test_inv_trigamma_closed_value():
    assert inv_trigamma(math.pi**2 / 6.0) == pytest.approx(1.0, abs=1e-12)


def test_inv_trigamma_extremes():
    assert inv_trigamma(1e8) == pytest.approx(1e-4, rel=1e-6)
    assert inv_trigamma(1e-8) == pytest.approx(1e8, rel=1e-6)


def test_inv_trigamma_against_bisection():
    for y in np.logspace(-4, 4, 25):
        assert inv_trigamma(y) == pytest.approx(bisection_inv_trigamma(y), rel=1e-9)


def test_inv_trigamma_round_trip():
    for y in np.logspace(-8, 8, 200):
        assert abs(trigamma(inv_trigamma(y)) - y) <= 1e-10 * max(1.0, y)


@pytest.mark.parametrize("bad_input", [0.0, -2.0, math.inf])
def test_inv_trigamma_domain_error(bad_input):
    with pytest.raises(DomainError):
        inv_trigamma(bad_input)
