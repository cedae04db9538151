"""Digamma, trigamma and tetragamma on the positive axis, the inverse trigamma, and the log-gamma power series."""

import math
from functools import lru_cache

from .._errors import ConvergenceError, DomainError
from ._types import PolygammaMethod, PolygammaResult

EULER_GAMMA = 0.5772156649015329
ASYMPTOTIC_THRESHOLD = 10.0
BERNOULLI_EVEN = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6)  # B_2, B_4, ..., B_14

INV_TRIGAMMA_MAX_ITERATIONS = 100
INV_TRIGAMMA_RTOL = 1e-14
INV_TRIGAMMA_RESIDUAL = 1e-12

SERIES_RADIUS = 2.0
DEFAULT_SERIES_TERMS = 400
_ZETA_CUTOFF = 10


def _require_positive(x: float, name: str = "x") -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f"'{name}' must be a finite number greater than zero, received {x}.")
    return x


def _require_series_disc(x: float) -> float:
    x = float(x)
    if not (math.isfinite(x) and abs(x - 1.0) < SERIES_RADIUS and x > 0):
        raise DomainError(f"The power series is valid only for 0 < x < 3 (|x - 1| < 2), received {x}.")
    return x


def _digamma_minus_log_asymptotic(x: float) -> float:
    inv_x2 = 1.0 / (x * x)
    power = 1.0
    series = 0.0
    for k, bernoulli in enumerate(BERNOULLI_EVEN, start=1):
        power *= inv_x2
        series += bernoulli / (2 * k) * power
    return -0.5 / x - series


def _x_trigamma_excess_asymptotic(x: float) -> float:
    inv_x2 = 1.0 / (x * x)
    power = 1.0
    series = 0.0
    for bernoulli in BERNOULLI_EVEN:
        power *= inv_x2
        series += bernoulli * power
    return 0.5 / x + series


def _tetragamma_asymptotic(x: float) -> float:
    inv_x2 = 1.0 / (x * x)
    power = inv_x2
    series = 0.0
    for k, bernoulli in enumerate(BERNOULLI_EVEN, start=1):
        power *= inv_x2
        series += (2 * k + 1) * bernoulli * power
    return -inv_x2 - inv_x2 / x - series


def _digamma_with_shifts(x: float) -> tuple[float, int]:
    correction = 0.0
    shift_count = 0
    while x < ASYMPTOTIC_THRESHOLD:
        correction -= 1.0 / x
        x += 1.0
        shift_count += 1
    return math.log(x) + _digamma_minus_log_asymptotic(x) + correction, shift_count


def _trigamma_with_shifts(x: float) -> tuple[float, int]:
    correction = 0.0
    shift_count = 0
    while x < ASYMPTOTIC_THRESHOLD:
        correction += 1.0 / (x * x)
        x += 1.0
        shift_count += 1
    return (1.0 + _x_trigamma_excess_asymptotic(x)) / x + correction, shift_count


def _tetragamma_with_shifts(x: float) -> tuple[float, int]:
    correction = 0.0
    shift_count = 0
    while x < ASYMPTOTIC_THRESHOLD:
        correction -= 2.0 / (x * x * x)
        x += 1.0
        shift_count += 1
    return _tetragamma_asymptotic(x) + correction, shift_count


def digamma(x: float) -> float:
    """Return the digamma function at x > 0."""
    return _digamma_with_shifts(_require_positive(x))[0]


def trigamma(x: float) -> float:
    """Return the trigamma function at x > 0."""
    return _trigamma_with_shifts(_require_positive(x))[0]


def tetragamma(x: float) -> float:
    """Return the second derivative of the digamma function at x > 0; strictly negative everywhere."""
    return _tetragamma_with_shifts(_require_positive(x))[0]


def digamma_minus_log(x: float) -> float:
    """Return digamma(x) - log(x), without cancellation for large x."""
    x = _require_positive(x)
    if x >= ASYMPTOTIC_THRESHOLD:
        return _digamma_minus_log_asymptotic(x)
    return digamma(x) - math.log(x)


def x_trigamma_excess(x: float) -> float:
    """Return x * trigamma(x) - 1, without cancellation for large x."""
    x = _require_positive(x)
    if x >= ASYMPTOTIC_THRESHOLD:
        return _x_trigamma_excess_asymptotic(x)
    return x * trigamma(x) - 1.0


def inv_trigamma(y: float) -> float:
    """
    Solve trigamma(x) = y for x > 0.

    Newton iteration on 1 / trigamma, which is close to linear in x, started from x = 1/y + 1/2 and kept inside the
    bracket max(1/sqrt(y), 1/y) < x < (1 + sqrt(1 + 4y)) / (2y) implied by 1/x + 1/(2x^2) < trigamma(x) < 1/x + 1/x^2.
    Steps leaving the bracket are replaced by a geometric bisection.

    Raises
    ------
    DomainError
        If y is not a finite positive number.
    ConvergenceError
        If the iteration does not settle within its cap, or the final residual is not certified.
    """
    y = _require_positive(y, name="y")
    lower = max(1.0 / math.sqrt(y), 1.0 / y)
    upper = (1.0 + math.sqrt(1.0 + 4.0 * y)) / (2.0 * y)

    x = 1.0 / y + 0.5
    if not lower < x < upper:
        x = math.sqrt(lower * upper)
    for _ in range(INV_TRIGAMMA_MAX_ITERATIONS):
        trigamma_x = trigamma(x)
        if trigamma_x > y:
            lower = x
        else:
            upper = x
        candidate = x + trigamma_x * (1.0 - trigamma_x / y) / tetragamma(x)
        if not lower <= candidate <= upper:
            candidate = math.sqrt(lower * upper)
        if abs(candidate - x) <= INV_TRIGAMMA_RTOL * x:
            residual = abs(trigamma(candidate) - y)
            if residual > INV_TRIGAMMA_RESIDUAL * max(1.0, y):
                raise ConvergenceError(
                    f"inv_trigamma({y}) settled at {candidate} with residual {residual}, above the certified tolerance."
                )
            return candidate
        x = candidate
    raise ConvergenceError(f"inv_trigamma({y}) did not converge in {INV_TRIGAMMA_MAX_ITERATIONS} iterations.")


@lru_cache(maxsize=None)
def zeta_minus_one(n: int) -> float:
    """
    Return zeta(n) - 1 for an integer n >= 2.

    The head of the Dirichlet series up to a fixed cutoff is summed directly and the tail is closed by Euler-Maclaurin
    with the same Bernoulli table the asymptotic polygamma series use.
    """
    if int(n) != n or n < 2:
        raise DomainError(f"'n' must be an integer of at least 2, received {n}.")
    n = int(n)
    cutoff = _ZETA_CUTOFF
    terms = [float(k) ** -n for k in range(2, cutoff)]
    terms.append(cutoff ** (1.0 - n) / (n - 1))
    terms.append(0.5 * cutoff**-n)
    rising = float(n)
    factorial = 2.0
    for j, bernoulli in enumerate(BERNOULLI_EVEN, start=1):
        terms.append(bernoulli / factorial * rising * cutoff ** (-n - 2 * j + 1))
        rising *= (n + 2 * j - 1) * (n + 2 * j)
        factorial *= (2 * j + 1) * (2 * j + 2)
    return math.fsum(terms)


def loggamma_series(z: float, terms: int) -> float:
    """
    Partial sum of the power series of log Gamma(1 + z).

    Parameters
    ----------
    z : float
        Must satisfy |z| < 2 and z > -1.
    terms : int
        Number of zeta-weighted terms after the logarithmic and linear parts.
    """
    z = float(z)
    if not (math.isfinite(z) and abs(z) < SERIES_RADIUS and z > -1.0):
        raise DomainError(f"The log-gamma series is valid only for -1 < z < 2, received {z}.")
    if terms < 1:
        raise ValueError(f"'terms' must be a positive integer, received {terms}.")
    parts = [-math.log1p(z), z * (1.0 - EULER_GAMMA)]
    parts.extend((-1) ** n * zeta_minus_one(n) * z**n / n for n in range(2, terms + 2))
    return math.fsum(parts)


def digamma_series(x: float, terms: int = DEFAULT_SERIES_TERMS) -> float:
    """Digamma from the termwise derivative of the log-gamma series, for 0 < x < 3."""
    z = _require_series_disc(x) - 1.0
    parts = [-1.0 / x, 1.0 - EULER_GAMMA]
    parts.extend((-1) ** n * zeta_minus_one(n) * z ** (n - 1) for n in range(2, terms + 2))
    return math.fsum(parts)


def trigamma_series(x: float, terms: int = DEFAULT_SERIES_TERMS) -> float:
    """Trigamma from the second termwise derivative of the log-gamma series, for 0 < x < 3."""
    z = _require_series_disc(x) - 1.0
    parts = [1.0 / (x * x)]
    parts.extend((-1) ** n * zeta_minus_one(n) * (n - 1) * z ** (n - 2) for n in range(2, terms + 2))
    return math.fsum(parts)


def tetragamma_series(x: float, terms: int = DEFAULT_SERIES_TERMS) -> float:
    z = _require_series_disc(x) - 1.0
    parts = [-2.0 / (x * x * x)]
    parts.extend((-1) ** n * zeta_minus_one(n) * (n - 1) * (n - 2) * z ** (n - 3) for n in range(3, terms + 2))
    return math.fsum(parts)


_RECURRENCE_EVALUATORS = {0: _digamma_with_shifts, 1: _trigamma_with_shifts, 2: _tetragamma_with_shifts}
_SERIES_EVALUATORS = {0: digamma_series, 1: trigamma_series, 2: tetragamma_series}


def evaluate_polygamma(
    x: float, order: int = 0, method: PolygammaMethod = PolygammaMethod.RECURRENCE_PLUS_ASYMPTOTIC
) -> PolygammaResult:
    """
    Evaluate the polygamma function of the given order (0, 1 or 2) by the requested method.

    The recurrence path reports how many unit shifts were applied before the asymptotic series took over; the power
    series path only accepts arguments inside its disc of convergence.
    """
    if order not in _RECURRENCE_EVALUATORS:
        raise ValueError(f"Polygamma order must be 0, 1 or 2, received {order}.")
    if method is PolygammaMethod.POWER_SERIES:
        return PolygammaResult(value=_SERIES_EVALUATORS[order](x), method=method)
    value, shift_count = _RECURRENCE_EVALUATORS[order](_require_positive(x))
    return PolygammaResult(value=value, method=method, shift_count=shift_count)
