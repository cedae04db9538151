"""Closed-form free energy density, the limit shape gamma, and the rate functions built from the digamma function."""

import math
from typing import Callable

from scipy.optimize import brentq, minimize_scalar

from .._errors import ConvergenceError, DomainError
from ._specialfn import digamma, digamma_minus_log, inv_trigamma, trigamma, x_trigamma_excess
from ._types import FreeEnergyBranch, FreeEnergyPoint, RatePoint

SMALL_BETA_THRESHOLD = 1e-4
STATIONARITY_TOLERANCE = 1e-10
ASYMPTOTIC_SLOPE = 2.0  # f(beta) / beta as beta grows

CONJUGATE_RTOL = 1e-12
CONJUGATE_XTOL = 1e-300
CONJUGATE_MAX_ITERATIONS = 200
CONJUGATE_MAX_BRACKET = 2.0**60

_TINY_THETA = 1e-50


def _require_finite(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"'{name}' must be finite, received {value}.")
    return value


def _certified_inverse_trigamma(y: float) -> float:
    a = inv_trigamma(y)
    residual = abs(trigamma(a) - y)
    if residual > STATIONARITY_TOLERANCE * max(1.0, y):
        raise ConvergenceError(f"Stationarity residual {residual} at a={a} exceeds tolerance for trigamma(a)={y}.")
    return a


def gamma_shape(x: float) -> float:
    """
    Evaluate the limit shape gamma(x) = -sup_a[x*a + digamma(a)] at x < 0.

    The supremum is attained at a = inv_trigamma(-x), certified by |x + trigamma(a)| <= 1e-10 * max(1, |x|).
    """
    x = _require_finite(x, "x")
    if x >= 0:
        raise DomainError(f"gamma_shape is defined for x < 0, received {x}.")
    a = _certified_inverse_trigamma(-x)
    return -(x * a + digamma(a))


def gamma_continuity_bound(x: float, delta: float) -> float:
    """
    Right side of the modulus of continuity |gamma(x - delta) - gamma(x)| <= c|sqrt(-x+delta) - sqrt(-x)|
    + |log(-x+delta) - log(-x)| with c = 2.

    Requires x < 0 and -x + delta > 0.
    """
    x = _require_finite(x, "x")
    delta = _require_finite(delta, "delta")
    if x >= 0 or delta <= x:
        raise DomainError(f"The continuity bound needs x < 0 and delta > x, received x={x}, delta={delta}.")
    return ASYMPTOTIC_SLOPE * abs(math.sqrt(-x + delta) - math.sqrt(-x)) + abs(math.log1p(-delta / x))


def small_beta_series(beta: float) -> float:
    """Taylor expansion of f about beta = 0 through order beta**8."""
    b2 = beta * beta
    return 1.0 + b2 / 2.0 - b2 * b2 / 24.0 + 11.0 * b2**4 / 2880.0


def free_energy_closed_form(beta: float) -> FreeEnergyPoint:
    """
    Evaluate f(beta) for beta != 0 from the closed form, whatever the size of beta.

    With a = inv_trigamma(beta**2) and e = a * trigamma(a) - 1, the closed form a*trigamma(a) - digamma(a)
    - log(trigamma(a)) is evaluated as 1 + e - log1p(e) - (digamma(a) - log(a)), which stays exact as a grows.
    """
    beta = _require_finite(beta, "beta")
    if beta == 0:
        raise DomainError("The closed form needs beta != 0; f(0) = 1.")
    a = _certified_inverse_trigamma(beta * beta)
    excess = x_trigamma_excess(a)
    value = 1.0 + excess - math.log1p(excess) - digamma_minus_log(a)
    return FreeEnergyPoint(beta=beta, value=value, maximizer_a=a, branch=FreeEnergyBranch.EXACT)


def free_energy(beta: float) -> FreeEnergyPoint:
    """
    Evaluate the free energy density f(beta).

    Below ``SMALL_BETA_THRESHOLD`` the Taylor expansion about 0 is used and f(0) is exactly 1; otherwise the closed
    form is evaluated. f is even in beta by construction.
    """
    beta = _require_finite(beta, "beta")
    magnitude = abs(beta)
    if magnitude < SMALL_BETA_THRESHOLD:
        return FreeEnergyPoint(
            beta=beta, value=small_beta_series(magnitude), maximizer_a=None, branch=FreeEnergyBranch.SMALL_BETA_SERIES
        )
    return free_energy_closed_form(beta)


def free_energy_derivative(beta: float) -> float:
    """Return f'(beta) = 2 * (a * trigamma(a) - 1) / beta with a = inv_trigamma(beta**2); f'(0) = 0."""
    beta = _require_finite(beta, "beta")
    magnitude = abs(beta)
    if magnitude < SMALL_BETA_THRESHOLD:
        return beta - beta**3 / 6.0
    a = _certified_inverse_trigamma(magnitude * magnitude)
    return 2.0 * x_trigamma_excess(a) / beta


def rate_lambda(theta: float) -> float:
    """Return Lambda(theta) = -2 log|theta| - digamma(1/theta**2), with Lambda(0) = 0."""
    theta = _require_finite(theta, "theta")
    if theta == 0:
        return 0.0
    if abs(theta) < _TINY_THETA:
        return 0.5 * theta * theta
    return -digamma_minus_log(1.0 / (theta * theta))


def rate_lambda_derivative(theta: float) -> float:
    theta = _require_finite(theta, "theta")
    if abs(theta) < _TINY_THETA:
        return theta
    return 2.0 * x_trigamma_excess(1.0 / (theta * theta)) / theta


def rate_lambda_m(m: float, theta: float) -> float:
    """Return Lambda_m(theta) = digamma(m) - digamma(m + theta) for m > 0 and theta > -m."""
    m = _require_finite(m, "m")
    theta = _require_finite(theta, "theta")
    if m <= 0:
        raise DomainError(f"'m' must be greater than zero, received {m}.")
    if theta <= -m:
        raise DomainError(f"'theta' must exceed -m = {-m}, received {theta}.")
    return digamma(m) - digamma(m + theta)


def _maximize_even_conjugate(
    x: float, function: Callable[[float], float], derivative: Callable[[float], float], name: str
) -> RatePoint:
    """
    Compute sup_t[x*t - function(t)] for an even convex function with odd increasing derivative.

    The stationarity equation derivative(t) = |x| is solved on [0, T] with T doubled from 1 until it brackets the
    root; if bracketing or the root-find fails, a bounded scalar maximization on the last bracket is used instead.
    """
    target = abs(x)
    if target == 0:
        return RatePoint(arg=x, value=0.0, optimizer_theta=0.0)

    upper = 1.0
    while derivative(upper) < target and upper < CONJUGATE_MAX_BRACKET:
        upper *= 2.0

    optimizer = None
    if derivative(upper) >= target:
        try:
            optimizer = brentq(
                lambda t: derivative(t) - target,
                0.0,
                upper,
                xtol=CONJUGATE_XTOL,
                rtol=CONJUGATE_RTOL,
                maxiter=CONJUGATE_MAX_ITERATIONS,
            )
        except (RuntimeError, ValueError):
            optimizer = None
    if optimizer is None:
        result = minimize_scalar(
            lambda t: function(t) - target * t,
            bounds=(0.0, upper),
            method="bounded",
            options=dict(xatol=CONJUGATE_RTOL * upper, maxiter=CONJUGATE_MAX_ITERATIONS),
        )
        if not result.success:
            raise ConvergenceError(f"Conjugate of {name} at {x} did not converge: {result.message}")
        optimizer = float(result.x)

    value = max(target * optimizer - function(optimizer), 0.0)
    return RatePoint(arg=x, value=value, optimizer_theta=math.copysign(optimizer, x))


def rate_lambda_star(x: float) -> RatePoint:
    """Return the convex conjugate Lambda*(x) = sup_theta[x*theta - Lambda(theta)] and the achieving theta."""
    x = _require_finite(x, "x")
    return _maximize_even_conjugate(x, function=rate_lambda, derivative=rate_lambda_derivative, name="Lambda")


def conjugate_f_minus_one_point(x: float) -> RatePoint:
    """
    Return sup_beta[x*beta - (f(beta) - 1)] with the achieving beta.

    Since f'(beta) increases to 2, the supremum is infinite for |x| >= 2 and reported as ``math.inf`` with an
    infinite optimizer of the sign of x.
    """
    x = _require_finite(x, "x")
    if abs(x) >= ASYMPTOTIC_SLOPE:
        return RatePoint(arg=x, value=math.inf, optimizer_theta=math.copysign(math.inf, x))
    return _maximize_even_conjugate(
        x,
        function=lambda beta: free_energy(beta).value - 1.0,
        derivative=free_energy_derivative,
        name="f - 1",
    )


def conjugate_f_minus_one(x: float) -> float:
    return conjugate_f_minus_one_point(x).value
