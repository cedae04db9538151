"""
Generalized Brownian queue: stationary queue length r, departures, and the tandem recursion.

Path 0 of a queue lattice is the arrival process B and path k >= 1 is the service process of stage k. Stage k sees
the departures of stage k - 1 as arrivals, stored as a path D_{k-1} with D_0 = B, so that
r_k(t) = log int_{-H}^t exp(D_{k-1}(s, t) + C_k(s, t) - m (t - s)) ds and D_k = D_{k-1} - r_k.
Integrals use the trapezoid rule on the grid.
"""

import math
import warnings
from functools import partial
from typing import Optional

import numpy as np
from scipy.special import logsumexp

from .._errors import DomainError, HorizonWarning
from .._replicas import map_replicas
from .._types import DEFAULT_SEED
from ..utils import mean_and_stderr
from ._environment import sample_lattice, summarize_replicas, time_index
from ._polymer import log_start_profile
from ._specialfn import digamma, trigamma
from ._types import BrownianLattice, DepartureReport, EstimateRecord, QueueSample, StatisticalVerdict, TandemResult

DEFAULT_QUEUE_DT = 0.01
MIN_HORIZON_RATE = 20.0  # horizon >= MIN_HORIZON_RATE / m
MIN_HORIZON = 40.0
FLUCTUATION_SIGMAS = 4.0
TAIL_WINDOW_FRACTION = 0.1
TAIL_MASS_TOLERANCE = 1e-8
DEPARTURE_END_TIME = 2.0
VARIANCE_RELATIVE_TOLERANCE = 0.05


def default_horizon(m: float, n: int = 1) -> float:
    """
    Truncation horizon for the (-inf, 0] integrals of an n-stage tandem.

    The integrand at s = -H is of order exp(-m H + sqrt(2 H) Z); the horizon keeps m H above 20 plus four standard
    deviations of the two Brownian increments, and grows with the mean shift 2 (n - 1) trigamma(m) of the tandem.
    """
    if not m > 0:
        raise DomainError(f"'m' must be greater than zero, received {m}.")
    root = (FLUCTUATION_SIGMAS * math.sqrt(2.0) + math.sqrt(2.0 * FLUCTUATION_SIGMAS**2 + 4.0 * m * MIN_HORIZON_RATE))
    fluctuation_horizon = (root / (2.0 * m)) ** 2
    return max(MIN_HORIZON_RATE / m, MIN_HORIZON, fluctuation_horizon) + 2.0 * (n - 1) * trigamma(m)


def resolve_horizon(m: float, n: int, horizon: Optional[float], dt: float) -> float:
    """Horizon actually used for an n-stage tandem: the default when none is given, rounded up to the grid."""
    if not m > 0:
        raise DomainError(f"'m' must be greater than zero, received {m}.")
    if n < 1:
        raise ValueError(f"'n' must be a positive integer, received {n}.")
    horizon = default_horizon(m, n) if horizon is None else horizon
    if horizon < MIN_HORIZON_RATE / m:
        raise DomainError(f"The horizon must be at least 20/m = {MIN_HORIZON_RATE / m} for m={m}, received {horizon}.")
    return math.ceil(horizon / dt - 1e-9) * dt


def queue_lattice(
    n_stages: int,
    horizon: float,
    dt: float,
    seed: int = DEFAULT_SEED,
    replica: int = 0,
    t_end: float = 0.0,
) -> BrownianLattice:
    """Arrival path plus ``n_stages`` service paths on [-horizon, t_end], all anchored at time 0."""
    return sample_lattice(
        n_paths=n_stages + 1, t_min=-horizon, t_max=t_end, dt=dt, seed=seed, anchor_time=0.0, replica=replica
    )


def _log_cumulative_trapezoid(exponents: np.ndarray, dt: float) -> np.ndarray:
    """log int_{t_0}^{t_j} exp(exponent) by the trapezoid rule; entry 0 is -inf."""
    log_values = np.empty_like(exponents)
    log_values[0] = -np.inf
    log_values[1:] = np.logaddexp.accumulate(np.logaddexp(exponents[:-1], exponents[1:]) + math.log(dt / 2.0))
    return log_values


def _queue_stage(
    arrivals: np.ndarray, service: np.ndarray, times: np.ndarray, m: float, dt: float
) -> tuple[np.ndarray, np.ndarray]:
    """Return (r, departures) of one stage; both are undefined at the first grid point (-inf and +inf)."""
    drift = arrivals + service - m * times
    log_integral = _log_cumulative_trapezoid(-drift, dt)
    queue = np.full_like(drift, -np.inf)
    queue[1:] = drift[1:] + log_integral[1:]
    departures = np.full_like(drift, np.inf)
    departures[1:] = arrivals[1:] - queue[1:]
    return queue, departures


def queue_profiles(lat: BrownianLattice, m: float, n: int) -> list[np.ndarray]:
    """Queue-length paths r_1, ..., r_n over the lattice grid."""
    if lat.n_paths < n + 1:
        raise ValueError(f"A tandem of {n} stages needs {n + 1} paths, the lattice carries {lat.n_paths}.")
    departures = lat.values[0]
    profiles = []
    for stage in range(1, n + 1):
        queue, departures = _queue_stage(departures, lat.values[stage], lat.times, m, lat.dt)
        profiles.append(queue)
    return profiles


def horizon_tail_fraction(lat: BrownianLattice, m: float, n: int) -> float:
    """
    Share of the n-stage integrand mass whose earliest time falls in the first 10% of the window.

    Uses the telescoped form sum_k r_k(0) = log int du exp(B(u, 0) + m u) Z_n(u), where Z_n(u) is the unit-beta
    partition function of the service paths over [u, 0].
    """
    end = time_index(lat, 0.0)
    arrival = lat.values[0, : end + 1]
    times = lat.times[: end + 1]
    log_marginal = arrival[end] - arrival + m * times + log_start_profile(lat.values[1 : n + 1, : end + 1], lat.dt)
    cutoff = lat.t_min + TAIL_WINDOW_FRACTION * (0.0 - lat.t_min)
    return float(np.exp(logsumexp(log_marginal[times <= cutoff]) - logsumexp(log_marginal)))


def warn_on_short_horizon(lat: BrownianLattice, m: float, n: int) -> None:
    fraction = horizon_tail_fraction(lat, m, n)
    if fraction > TAIL_MASS_TOLERANCE:
        warnings.warn(
            message=(
                f"The horizon {-lat.t_min} leaves a fraction {fraction:.3g} of the integrand mass in its last 10%; "
                "increase the horizon."
            ),
            category=HorizonWarning,
            stacklevel=3,
        )


def sample_r0(
    m: float,
    horizon: Optional[float] = None,
    dt: float = DEFAULT_QUEUE_DT,
    seed: int = DEFAULT_SEED,
    replica: int = 0,
) -> QueueSample:
    """
    Sample the stationary queue length r(0) = log int_{-H}^0 exp(B(s, 0) + C(s, 0) + m s) ds.

    Its law is that of -log of a gamma(m) variate, so its mean is -digamma(m) and its variance trigamma(m).
    """
    horizon = resolve_horizon(m, 1, horizon, dt)
    lat = queue_lattice(1, horizon, dt, seed=seed, replica=replica)
    (queue,) = queue_profiles(lat, m, 1)
    return QueueSample(m=m, r0=float(queue[-1]), horizon=horizon, dt=dt, seed=seed)


def tandem(
    m: float,
    n: int,
    horizon: Optional[float] = None,
    dt: float = DEFAULT_QUEUE_DT,
    seed: int = DEFAULT_SEED,
    replica: int = 0,
    check_horizon: bool = True,
) -> TandemResult:
    """
    Run n queues in tandem on one environment and return every r_k(0) with their average.

    Emits a HorizonWarning when more than 1e-8 of the integrand mass sits in the first 10% of the window.
    """
    horizon = resolve_horizon(m, n, horizon, dt)
    lat = queue_lattice(n, horizon, dt, seed=seed, replica=replica)
    if check_horizon:
        warn_on_short_horizon(lat, m, n)
    per_stage = np.array([queue[-1] for queue in queue_profiles(lat, m, n)])
    return TandemResult(m=m, n=n, mean_r=float(np.mean(per_stage)), per_stage=per_stage)


def _tandem_replica(replica: int, m: float, n: int, horizon: float, dt: float, seed: int) -> np.ndarray:
    return tandem(m=m, n=n, horizon=horizon, dt=dt, seed=seed, replica=replica, check_horizon=replica == 0).per_stage


def tandem_stage_matrix(
    m: float,
    n: int,
    samples: int,
    horizon: Optional[float] = None,
    dt: float = DEFAULT_QUEUE_DT,
    seed: int = DEFAULT_SEED,
    n_jobs: Optional[int] = None,
    progress_bar: bool = False,
) -> np.ndarray:
    """Per-stage queue lengths r_k(0) of independent environments, one row per environment."""
    horizon = resolve_horizon(m, n, horizon, dt)
    rows = map_replicas(
        partial(_tandem_replica, m=m, n=n, horizon=horizon, dt=dt, seed=seed),
        samples,
        n_jobs=n_jobs,
        progress_bar=progress_bar,
    )
    return np.vstack(rows)


def estimate_queue(
    m: float,
    n: int = 1,
    horizon: Optional[float] = None,
    dt: float = DEFAULT_QUEUE_DT,
    samples: int = 100,
    seed: int = DEFAULT_SEED,
    n_jobs: Optional[int] = None,
    progress_bar: bool = False,
) -> EstimateRecord:
    """Mean and standard error over environments of (1/n) sum_k r_k(0); the target is -digamma(m)."""
    if samples < 2:
        raise ValueError(f"At least two samples are needed for a standard error, received {samples}.")
    stages = tandem_stage_matrix(
        m, n, samples, horizon=horizon, dt=dt, seed=seed, n_jobs=n_jobs, progress_bar=progress_bar
    )
    return summarize_replicas(stages.mean(axis=1), n=n, dt=dt, seed=seed, quantity="queue")


def _departure_replica(replica: int, m: float, horizon: float, dt: float, seed: int) -> np.ndarray:
    lat = queue_lattice(1, horizon, dt, seed=seed, replica=replica, t_end=DEPARTURE_END_TIME)
    (queue,) = queue_profiles(lat, m, 1)
    departures = lat.values[0] - queue
    indices = [time_index(lat, t) for t in (0.0, 0.5, 1.0, 2.0)]
    f0, f_half, f1, f2 = (departures[index] - departures[indices[0]] for index in indices)
    return np.array([f1 - f0, f2 - f1, f1 - f_half, queue[indices[2]]])


def _correlation_verdict(name: str, left: np.ndarray, right: np.ndarray) -> StatisticalVerdict:
    correlation = float(np.corrcoef(left, right)[0, 1])
    stderr = 1.0 / math.sqrt(left.size)
    return StatisticalVerdict(
        name=name,
        estimate=correlation,
        target=0.0,
        stderr=stderr,
        tolerance=3.0 * stderr,
        passed=abs(correlation) <= 3.0 * stderr,
    )


def departure_brownian_check(
    m: float,
    horizon: Optional[float] = None,
    dt: float = DEFAULT_QUEUE_DT,
    n_samples: int = 10_000,
    seed: int = DEFAULT_SEED,
    n_jobs: Optional[int] = None,
    progress_bar: bool = False,
) -> DepartureReport:
    """
    Finite-dimensional tests that the departures f_1(t) = B(0, t) + r_1(0) - r_1(t) form a Brownian motion
    independent of the future queue length.

    Reports the mean and variance of f_1(1) - f_1(0), the correlation of consecutive unit increments, and the
    correlation of f_1(1) - f_1(0.5) with r_1(1).
    """
    if n_samples < 3:
        raise ValueError(f"'n_samples' must be at least 3, received {n_samples}.")
    horizon = resolve_horizon(m, 1, horizon, dt)
    samples = np.vstack(
        map_replicas(
            partial(_departure_replica, m=m, horizon=horizon, dt=dt, seed=seed),
            n_samples,
            n_jobs=n_jobs,
            progress_bar=progress_bar,
        )
    )
    first, second, late, queue_at_one = samples.T

    mean, mean_stderr = mean_and_stderr(first)
    variance = float(np.var(first, ddof=1))
    variance_stderr = variance * math.sqrt(2.0 / (n_samples - 1))
    verdicts = (
        StatisticalVerdict(
            name="increment_mean",
            estimate=mean,
            target=0.0,
            stderr=mean_stderr,
            tolerance=3.0 * mean_stderr,
            passed=abs(mean) <= 3.0 * mean_stderr,
        ),
        StatisticalVerdict(
            name="increment_variance",
            estimate=variance,
            target=1.0,
            stderr=variance_stderr,
            tolerance=VARIANCE_RELATIVE_TOLERANCE,
            passed=abs(variance - 1.0) <= VARIANCE_RELATIVE_TOLERANCE,
        ),
        _correlation_verdict("lag_one_correlation", first, second),
        _correlation_verdict("past_departures_vs_queue", late, queue_at_one),
    )
    return DepartureReport(m=m, n_samples=n_samples, verdicts=verdicts)


def dag_identity_check(
    m: float, horizon: Optional[float] = None, dt: float = 0.05, seed: int = DEFAULT_SEED, replica: int = 0
) -> tuple[float, float]:
    """
    Compare r_1(0) + r_2(0) from the recursion with the direct double quadrature of the telescoped integral.

    The quadrature loops over the outer time with the same trapezoid weights as the recursion, so the two agree up to
    rounding.
    """
    horizon = resolve_horizon(m, 2, horizon, dt)
    lat = queue_lattice(2, horizon, dt, seed=seed, replica=replica)
    recursion = float(sum(queue[-1] for queue in queue_profiles(lat, m, 2)))

    arrival, first_service, second_service = lat.values
    times = lat.times
    last = len(times) - 1
    outer_terms = []
    for s in range(1, last + 1):
        inner_weights = np.full(s + 1, dt)
        inner_weights[[0, s]] = dt / 2.0
        inner = logsumexp(
            arrival[s] - arrival[: s + 1] + first_service[s] - first_service[: s + 1] + m * (times[: s + 1] - times[s]),
            b=inner_weights,
        )
        outer_weight = dt / 2.0 if s == last else dt
        outer_terms.append(
            math.log(outer_weight)
            + inner
            + arrival[last]
            - arrival[s]
            + second_service[last]
            - second_service[s]
            + m * times[s]
        )
    return recursion, float(logsumexp(outer_terms))


def dufresne_target(m: float) -> tuple[float, float]:
    """Mean and variance of -log of a gamma(m) variate."""
    return -digamma(m), trigamma(m)
