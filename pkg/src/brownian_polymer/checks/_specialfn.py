"""Checks of the digamma family: closed values, monotonicity, functional equations and series agreement."""

import math

import numpy as np

from .._registration import Importance, register_check
from .._types import CheckResult, ValidationContext, Verdict
from ..models import (
    EULER_GAMMA,
    digamma,
    digamma_series,
    inv_trigamma,
    loggamma_series,
    trigamma,
    trigamma_series,
)

MONOTONICITY_GRID = np.logspace(-3, 6, 1000)
ABSOLUTE_GRID = np.linspace(0.5, 10.0, 191)
SERIES_GRID = np.linspace(0.25, 1.75, 31)
ROUND_TRIP_GRID = np.logspace(-8, 8, 1000)


@register_check(importance=Importance.EXACT, suite="specialfn")
def check_polygamma_closed_values(context: ValidationContext) -> CheckResult:
    """Digamma and trigamma at 1 equal -Euler's constant and pi**2 / 6."""
    digamma_error = abs(digamma(1.0) + EULER_GAMMA)
    trigamma_error = abs(trigamma(1.0) - math.pi**2 / 6.0)
    inverse_error = abs(inv_trigamma(math.pi**2 / 6.0) - 1.0)
    passed = max(digamma_error, trigamma_error, inverse_error) <= 1e-12
    return CheckResult(
        detail=(
            f"|digamma(1) + euler_gamma| = {digamma_error:.3g}, |trigamma(1) - pi^2/6| = {trigamma_error:.3g}, "
            f"|inv_trigamma(pi^2/6) - 1| = {inverse_error:.3g}; tolerance 1e-12."
        ),
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="specialfn")
def check_polygamma_monotonicity(context: ValidationContext) -> CheckResult:
    """Digamma is strictly increasing and trigamma strictly decreasing on [1e-3, 1e6]."""
    digamma_values = np.array([digamma(x) for x in MONOTONICITY_GRID])
    trigamma_values = np.array([trigamma(x) for x in MONOTONICITY_GRID])
    increasing = bool(np.all(np.diff(digamma_values) > 0))
    decreasing = bool(np.all(np.diff(trigamma_values) < 0))
    positive = bool(np.all(trigamma_values > 0))
    return CheckResult(
        detail=(
            f"On {MONOTONICITY_GRID.size} log-spaced points: digamma increasing={increasing}, "
            f"trigamma decreasing={decreasing}, trigamma positive={positive}."
        ),
        verdict=Verdict.PASS if increasing and decreasing and positive else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="specialfn")
def check_functional_equations(context: ValidationContext) -> CheckResult:
    """
    digamma(x + 1) = digamma(x) + 1/x and trigamma(x + 1) = trigamma(x) - 1/x**2 within 1e-10.

    The residual is absolute on [0.5, 10], where every term is of order one, and relative to the largest term on
    the whole grid [1e-3, 1e6].
    """

    def residuals(x: float) -> tuple[float, float]:
        return (
            abs(digamma(x + 1.0) - digamma(x) - 1.0 / x),
            abs(trigamma(x + 1.0) - trigamma(x) + 1.0 / x**2),
        )

    worst_absolute = max(max(residuals(x)) for x in ABSOLUTE_GRID)
    worst_scaled = 0.0
    for x in MONOTONICITY_GRID:
        digamma_residual, trigamma_residual = residuals(x)
        worst_scaled = max(
            worst_scaled,
            digamma_residual / max(1.0, abs(digamma(x)), 1.0 / x),
            trigamma_residual / max(1.0, trigamma(x)),
        )
    return CheckResult(
        detail=(
            f"Largest absolute residual of the recurrences on [0.5, 10] is {worst_absolute:.3g}; largest scaled "
            f"residual on [1e-3, 1e6] is {worst_scaled:.3g}; tolerance 1e-10 for both."
        ),
        verdict=Verdict.PASS if max(worst_absolute, worst_scaled) <= 1e-10 else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="specialfn")
def check_series_agreement(context: ValidationContext) -> CheckResult:
    """The recurrence and asymptotic path agrees with the differentiated log-gamma series on [0.25, 1.75]."""
    digamma_gap = max(abs(digamma(x) - digamma_series(x)) for x in SERIES_GRID)
    trigamma_gap = max(abs(trigamma(x) - trigamma_series(x)) for x in SERIES_GRID)
    endpoint_error = max(abs(loggamma_series(1.0, 200)), abs(loggamma_series(0.5, 200) - math.lgamma(1.5)))
    passed = max(digamma_gap, trigamma_gap) <= 1e-10 and endpoint_error <= 1e-12
    return CheckResult(
        detail=(
            f"Largest gap to the series: digamma {digamma_gap:.3g}, trigamma {trigamma_gap:.3g} (tolerance 1e-10); "
            f"log-gamma series error at z=1 and z=0.5 is {endpoint_error:.3g} (tolerance 1e-12)."
        ),
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="specialfn")
def check_inverse_trigamma_round_trip(context: ValidationContext) -> CheckResult:
    """|trigamma(inv_trigamma(y)) - y| <= 1e-10 * max(1, y) for y in [1e-8, 1e8]."""
    worst = max(abs(trigamma(inv_trigamma(y)) - y) / max(1.0, y) for y in ROUND_TRIP_GRID)
    return CheckResult(
        detail=f"Largest scaled round-trip residual over {ROUND_TRIP_GRID.size} points is {worst:.3g}.",
        verdict=Verdict.PASS if worst <= 1e-10 else Verdict.FAIL,
    )
