"""Checks of the closed-form free energy, the limit shape and the rate functions."""

import math

import numpy as np
from scipy.optimize import minimize_scalar

from .._registration import Importance, register_check
from .._types import CheckResult, ValidationContext, Verdict
from ..models import (
    EULER_GAMMA,
    conjugate_f_minus_one,
    conjugate_f_minus_one_point,
    digamma,
    free_energy,
    free_energy_closed_form,
    gamma_continuity_bound,
    gamma_shape,
    keyed_rng,
    rate_lambda,
    rate_lambda_derivative,
    rate_lambda_m,
    rate_lambda_star,
    small_beta_series,
    trigamma,
)
from ..utils import is_ascending_series

CONVEXITY_GRID = np.linspace(-5.0, 5.0, 401)
SLOPE_BETAS = (10.0, 1e2, 1e3, 1e4)
SLOPE_WINDOW = 0.05
DUALITY_MS = (0.5, 1.0, 2.0)
RANDOM_PAIRS = 1000
CONTINUITY_XS = (-50.0, -5.0, -1.0, -0.1, -0.01)
CONTINUITY_DELTAS = (1e-3, 0.5, 10.0)


def _f(beta: float) -> float:
    return free_energy(beta).value


@register_check(importance=Importance.EXACT, suite="freeenergy")
def check_free_energy_at_zero(context: ValidationContext) -> CheckResult:
    """f(0) = 1 exactly and f is even."""
    symmetric = all(_f(-beta) == _f(beta) for beta in (0.1, 1.0, 10.0))
    exact = _f(0.0) == 1.0
    return CheckResult(
        detail=f"f(0) = {_f(0.0)!r}; f(-beta) == f(beta) for beta in (0.1, 1, 10): {symmetric}.",
        verdict=Verdict.PASS if exact and symmetric else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="freeenergy")
def check_free_energy_convexity(context: ValidationContext) -> CheckResult:
    """Second central differences of f on [-5, 5] with step 0.025 are strictly positive."""
    values = np.array([_f(beta) for beta in CONVEXITY_GRID])
    second_differences = values[2:] - 2.0 * values[1:-1] + values[:-2]
    smallest = float(second_differences.min())
    return CheckResult(
        detail=f"Smallest second difference over {CONVEXITY_GRID.size} points is {smallest:.3g}.",
        verdict=Verdict.PASS if smallest > 0 else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="freeenergy")
def check_free_energy_flat_at_zero(context: ValidationContext) -> CheckResult:
    """Central differences of f at 0 vanish within ten times the squared step."""
    estimates = {step: (_f(step) - _f(-step)) / (2.0 * step) for step in (1e-2, 1e-3, 1e-4)}
    passed = all(abs(estimate) <= 10.0 * step**2 for step, estimate in estimates.items())
    return CheckResult(
        detail=f"Central differences at 0: {estimates}.",
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="freeenergy")
def check_branch_continuity(context: ValidationContext) -> CheckResult:
    """The closed form and the small-beta series agree to 1e-9 around the switch point."""
    betas = np.linspace(0.5e-4, 2e-4, 31)
    gap = max(abs(free_energy_closed_form(beta).value - small_beta_series(beta)) for beta in betas)
    return CheckResult(
        detail=f"Largest gap between closed form and series on [5e-5, 2e-4] is {gap:.3g}; tolerance 1e-9.",
        verdict=Verdict.PASS if gap <= 1e-9 else Verdict.FAIL,
    )


@register_check(importance=Importance.TREND, suite="freeenergy")
def check_asymptotic_slope(context: ValidationContext) -> CheckResult:
    """f(beta)/beta approaches 2 monotonically along 10, 1e2, 1e3, 1e4 and is within 0.05 of 2 at 1e4."""
    gaps = [abs(_f(beta) / beta - 2.0) for beta in SLOPE_BETAS]
    monotone = is_ascending_series(gaps[::-1], strict=True)
    return CheckResult(
        detail=f"|f(beta)/beta - 2| along {SLOPE_BETAS}: {[round(gap, 6) for gap in gaps]}.",
        verdict=Verdict.PASS if monotone and gaps[-1] <= SLOPE_WINDOW else Verdict.FAIL,
    )


@register_check(importance=Importance.TREND, suite="freeenergy")
def check_excess_slope(context: ValidationContext) -> CheckResult:
    """(f(beta) - 1)/beta increases toward 2, which bounds the finite domain of the conjugate of f - 1."""
    betas = (0.5, 1.0, 2.0, 5.0) + SLOPE_BETAS
    slopes = [(_f(beta) - 1.0) / beta for beta in betas]
    passed = is_ascending_series(slopes, strict=True) and slopes[-1] < 2.0
    return CheckResult(
        detail=f"(f(beta) - 1)/beta along {betas}: {[round(slope, 6) for slope in slopes]}.",
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="freeenergy")
def check_limit_shape_closed_value(context: ValidationContext) -> CheckResult:
    """gamma(-pi**2/6) = pi**2/6 + Euler's constant."""
    error = abs(gamma_shape(-math.pi**2 / 6.0) - (math.pi**2 / 6.0 + EULER_GAMMA))
    return CheckResult(
        detail=f"|gamma(-pi^2/6) - (pi^2/6 + euler_gamma)| = {error:.3g}; tolerance 1e-10.",
        verdict=Verdict.PASS if error <= 1e-10 else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="freeenergy")
def check_duality(context: ValidationContext) -> CheckResult:
    """The maximum over x < 0 of m*x + gamma(x) equals -digamma(m) for m in (0.5, 1, 2)."""
    errors = {}
    for m in DUALITY_MS:
        center = trigamma(m)
        result = minimize_scalar(
            lambda x: -(m * x + gamma_shape(x)),
            bounds=(-(4.0 * center + 1.0), -center / 4.0),
            method="bounded",
            options=dict(xatol=1e-10),
        )
        errors[m] = abs(-result.fun + digamma(m))
    return CheckResult(
        detail=f"|sup_x[m x + gamma(x)] + digamma(m)| by m: {errors}; tolerance 1e-8.",
        verdict=Verdict.PASS if max(errors.values()) <= 1e-8 else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="freeenergy")
def check_fenchel_inequality(context: ValidationContext) -> CheckResult:
    """m*x + gamma(x) <= -digamma(m) for random m > 0 and x < 0."""
    rng = keyed_rng(context.seed, 0)
    ms = np.exp(rng.uniform(math.log(0.05), math.log(20.0), size=RANDOM_PAIRS))
    xs = -np.exp(rng.uniform(math.log(0.01), math.log(50.0), size=RANDOM_PAIRS))
    worst = max(
        (m * x + gamma_shape(x) + digamma(m)) / max(1.0, abs(m * x)) for m, x in zip(ms.tolist(), xs.tolist())
    )
    return CheckResult(
        detail=f"Largest scaled excess of m x + gamma(x) over -digamma(m) in {RANDOM_PAIRS} pairs is {worst:.3g}.",
        verdict=Verdict.PASS if worst <= 1e-10 else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="freeenergy")
def check_limit_shape_concavity(context: ValidationContext) -> CheckResult:
    """gamma at a midpoint is at least the average of gamma at the endpoints, for random pairs in [-50, -0.01]."""
    rng = keyed_rng(context.seed, 1)
    left, right = rng.uniform(-50.0, -0.01, size=(2, RANDOM_PAIRS))
    worst = max(
        (gamma_shape(x) + gamma_shape(y)) / 2.0 - gamma_shape((x + y) / 2.0)
        for x, y in zip(left.tolist(), right.tolist())
    )
    return CheckResult(
        detail=f"Largest concavity violation over {RANDOM_PAIRS} pairs is {worst:.3g}; tolerance 1e-10.",
        verdict=Verdict.PASS if worst <= 1e-10 else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="freeenergy")
def check_limit_shape_continuity(context: ValidationContext) -> CheckResult:
    """|gamma(x - delta) - gamma(x)| stays below its square-root plus logarithm modulus of continuity."""
    worst = -math.inf
    for x in CONTINUITY_XS:
        for delta in CONTINUITY_DELTAS + (x / 2.0,):
            change = abs(gamma_shape(x - delta) - gamma_shape(x))
            worst = max(worst, change - gamma_continuity_bound(x, delta))
    return CheckResult(
        detail=f"Largest excess of |gamma(x - delta) - gamma(x)| over its bound is {worst:.3g}.",
        verdict=Verdict.PASS if worst <= 1e-12 else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="freeenergy")
def check_rate_lambda(context: ValidationContext) -> CheckResult:
    """Lambda(0) = Lambda'(0) = 0, Lambda is even, and its derivative matches central differences."""
    step = 1e-4
    slope_at_zero = (rate_lambda(step) - rate_lambda(-step)) / (2.0 * step)
    symmetric = all(rate_lambda(-theta) == rate_lambda(theta) for theta in (0.3, 1.0, 3.0))
    derivative_gap = max(
        abs((rate_lambda(theta + 1e-5) - rate_lambda(theta - 1e-5)) / 2e-5 - rate_lambda_derivative(theta))
        for theta in (0.5, 1.0, 2.0)
    )
    passed = rate_lambda(0.0) == 0.0 and abs(slope_at_zero) <= 1e-6 and symmetric and derivative_gap <= 1e-6
    return CheckResult(
        detail=(
            f"Lambda(0) = {rate_lambda(0.0)}, central slope at 0 = {slope_at_zero:.3g}, even: {symmetric}, "
            f"largest derivative gap = {derivative_gap:.3g}."
        ),
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="freeenergy")
def check_rate_lambda_star(context: ValidationContext) -> CheckResult:
    """Lambda* vanishes only at 0, is even, and matches a dense grid maximization at x = 1."""
    at_zero = rate_lambda_star(0.0)
    symmetric = all(
        rate_lambda_star(-x).value == rate_lambda_star(x).value and rate_lambda_star(x).value > 0 for x in (0.5, 2.0)
    )
    thetas = np.arange(-10_000, 10_001) * 1e-3
    grid_value = max(theta - rate_lambda(theta) for theta in thetas.tolist())
    gap = abs(rate_lambda_star(1.0).value - grid_value)
    passed = at_zero.value == 0.0 and at_zero.optimizer_theta == 0.0 and symmetric and gap <= 1e-6
    return CheckResult(
        detail=(
            f"Lambda*(0) = {at_zero.value}, positive and even at 0.5 and 2: {symmetric}, "
            f"|Lambda*(1) - grid maximum| = {gap:.3g}."
        ),
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="freeenergy")
def check_rate_lambda_m(context: ValidationContext) -> CheckResult:
    """Lambda_m(0) = 0, Lambda_1(1) = -1 and Lambda_m'(0) = -trigamma(m)."""
    step = 1e-5
    slope_gap = max(
        abs((rate_lambda_m(m, step) - rate_lambda_m(m, -step)) / (2.0 * step) + trigamma(m)) for m in DUALITY_MS
    )
    value_gap = abs(rate_lambda_m(1.0, 1.0) + 1.0)
    passed = rate_lambda_m(1.0, 0.0) == 0.0 and value_gap <= 1e-12 and slope_gap <= 1e-6
    return CheckResult(
        detail=f"|Lambda_1(1) + 1| = {value_gap:.3g}, largest |Lambda_m'(0) + trigamma(m)| = {slope_gap:.3g}.",
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="freeenergy")
def check_conjugate_f_minus_one(context: ValidationContext) -> CheckResult:
    """(f - 1)* vanishes at 0, is even, matches a grid maximization at 1 and is infinite beyond slope 2."""
    betas = np.arange(0, 10_001) * 1e-3
    grid_value = max(beta - (_f(beta) - 1.0) for beta in betas.tolist())
    at_one = conjugate_f_minus_one_point(1.0)
    gap = abs(at_one.value - grid_value)
    symmetric = conjugate_f_minus_one(-1.0) == at_one.value
    infinite = math.isinf(conjugate_f_minus_one(2.0)) and math.isinf(conjugate_f_minus_one(-2.5))
    passed = conjugate_f_minus_one(0.0) == 0.0 and symmetric and gap <= 1e-6 and infinite
    return CheckResult(
        detail=(
            f"(f-1)*(1) = {at_one.value:.10f} at beta = {at_one.optimizer_theta:.6f}, grid gap {gap:.3g}; "
            f"even: {symmetric}; infinite for |x| >= 2: {infinite}."
        ),
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )
