"""
Quenched estimators on a Brownian lattice.

All recursions share one discretization: integration variables live on the grid with strict ordering
``j_1 < j_2 < ... < j_{n-1} < j_end`` and each carries a left-endpoint weight dt.
"""

import math
from functools import partial
from typing import Iterator, Optional, Sequence

import numpy as np
from scipy.special import logsumexp

from .._errors import DomainError, GridError, InsufficientPathsError, WindowMissError
from .._replicas import map_replicas
from .._types import DEFAULT_SEED
from ..utils import mean_and_stderr
from ._environment import grid_steps, keyed_rng, sample_lattice, summarize_replicas, time_index
from ._specialfn import trigamma
from ._types import (
    BrownianLattice,
    ChernoffPoint,
    EstimateRecord,
    KacDiagnostic,
    MomentIdentityResult,
    TransferMode,
    TransferProfile,
)

MAX_POLYMER_DT = 0.025
KAC_WINDOW_HALF_WIDTH = 0.25
MC_CHUNK_SIZE = 100_000


def default_dt(n: int) -> float:
    """Largest step not exceeding min(0.025, 1/(4 sqrt(n))) that divides n."""
    raw = min(MAX_POLYMER_DT, 1.0 / (4.0 * math.sqrt(n)))
    return n / math.ceil(n / raw - 1e-9)


def discrete_simplex_log_volume(n: int, grid_steps: int, dt: float) -> float:
    """Log of C(grid_steps, n - 1) * dt**(n - 1): the beta = 0 value of the strictly ordered grid recursion."""
    if n < 1:
        raise ValueError(f"'n' must be a positive integer, received {n}.")
    if grid_steps < n - 1:
        return -math.inf
    log_binomial = math.lgamma(grid_steps + 1) - math.lgamma(n) - math.lgamma(grid_steps - n + 2)
    return log_binomial + (n - 1) * math.log(dt)


def _rows(lat: BrownianLattice, n: int, t_start: float, t_end: float) -> np.ndarray:
    if n < 1:
        raise ValueError(f"'n' must be a positive integer, received {n}.")
    if lat.n_paths < n:
        raise InsufficientPathsError(f"The estimator needs {n} paths but the lattice carries {lat.n_paths}.")
    start, end = time_index(lat, t_start), time_index(lat, t_end)
    if end <= start:
        raise GridError(f"The window [{t_start}, {t_end}] must contain at least one grid step.")
    return lat.values[:n, start : end + 1]


def _partition_levels(rows: np.ndarray, beta: float, dt: float) -> Iterator[np.ndarray]:
    """Yield log phi_k over the window for k = 1..n, built with one running log-sum-exp per level."""
    log_dt = math.log(dt)
    profile = beta * (rows[0] - rows[0, 0])
    yield profile
    for path in rows[1:]:
        energy = beta * path
        cumulative = np.logaddexp.accumulate(profile - energy)
        profile = np.empty_like(cumulative)
        profile[0] = -np.inf
        profile[1:] = energy[1:] + log_dt + cumulative[:-1]
        yield profile


def _max_plus_levels(rows: np.ndarray, strict: bool = False, minimize: bool = False) -> Iterator[np.ndarray]:
    accumulate = np.minimum.accumulate if minimize else np.maximum.accumulate
    profile = rows[0] - rows[0, 0]
    yield profile
    for path in rows[1:]:
        running = accumulate(profile - path)
        if strict:
            running = np.concatenate(([np.inf if minimize else -np.inf], running[:-1]))
        profile = path + running
        yield profile


def transfer_profiles(
    lat: BrownianLattice, beta: float, n: int, mode: TransferMode = TransferMode.LOG_SUM_EXP
) -> Iterator[TransferProfile]:
    """
    Yield the recursion state for levels 1..n over the lattice from time 0 to its end.

    In log-sum-exp mode level k holds log phi_k(t); in max-plus mode it holds L_k(t) and ``beta`` is ignored.
    """
    rows = _rows(lat, n, 0.0, lat.t_max)
    levels = _partition_levels(rows, beta, lat.dt) if mode is TransferMode.LOG_SUM_EXP else _max_plus_levels(rows)
    for level, log_values in enumerate(levels, start=1):
        yield TransferProfile(level=level, log_values=log_values, mode=mode)


def _log_partition_rows(rows: np.ndarray, beta: float, dt: float) -> float:
    *_, profile = _partition_levels(rows, beta, dt)
    return float(profile[-1])


def log_partition_dp(lat: BrownianLattice, beta: float, n: int) -> float:
    """
    Log of the grid partition function Z_n(beta) on [0, n].

    Parameters
    ----------
    lat : BrownianLattice
        Must contain the grid times 0 and n and at least n paths.
    beta : float
    n : int

    Returns
    -------
    float
        log of sum over 0 <= j_1 < ... < j_{n-1} < M of dt**(n-1) * exp(beta * E), where E is the energy collected by
        following path k between consecutive jump times.
    """
    return _log_partition_rows(_rows(lat, n, 0.0, float(n)), beta, lat.dt)


def lpp_dp(lat: BrownianLattice, n: int, t: float, strict: bool = False) -> float:
    """
    Grid last-passage value L_n(t) by the running-max recursion.

    With ``strict=True`` the jump times follow the strict ordering of the partition recursion, which makes
    (1/beta) log Z_n(beta) directly comparable.
    """
    *_, profile = _max_plus_levels(_rows(lat, n, 0.0, t), strict=strict)
    return float(profile[-1])


def lpp_min_dp(lat: BrownianLattice, n: int, t: float) -> float:
    """Min-plus passage value: the infimum of the same energy over non-decreasing grid jump times."""
    *_, profile = _max_plus_levels(_rows(lat, n, 0.0, t), minimize=True)
    return float(profile[-1])


def _reverse_log_cumsum(values: np.ndarray) -> np.ndarray:
    return np.logaddexp.accumulate(values[::-1])[::-1]


def log_start_profile(rows: np.ndarray, dt: float) -> np.ndarray:
    """
    Log partition function with unit beta for every start index of the window at once.

    Entry ``a`` equals the forward recursion run on ``rows[:, a:]``; it is -inf where fewer grid steps remain than
    jump times.
    """
    rows = np.asarray(rows, dtype=float)
    last = rows.shape[1] - 1
    if rows.shape[0] == 1:
        return rows[0, last] - rows[0]

    log_dt = math.log(dt)
    tail = np.full(last + 1, -np.inf)
    tail[:last] = rows[-1, last] - rows[-1, :last]
    for path in rows[-2:0:-1]:
        inclusive = _reverse_log_cumsum(path + tail)
        tail = np.full(last + 1, -np.inf)
        tail[:last] = inclusive[1:] - path[:last] + log_dt
    return _reverse_log_cumsum(rows[0] + tail) - rows[0] + log_dt


def gamma_n_dp(lat: BrownianLattice, x: float, n: int) -> float:
    """
    Finite-n limit shape gamma_n(x) = (1/n) log Z_n over the window [x*n, 0] with unit beta.

    The lattice must contain the grid times x*n and 0.
    """
    if not x < 0:
        raise DomainError(f"gamma_n_dp is defined for x < 0, received {x}.")
    return _log_partition_rows(_rows(lat, n, x * n, 0.0), 1.0, lat.dt) / n


def _log_trapezoid_weights(x: np.ndarray) -> np.ndarray:
    widths = np.diff(x)
    weights = np.zeros_like(x)
    weights[:-1] += widths / 2.0
    weights[1:] += widths / 2.0
    return np.log(weights)


def default_kac_window(m: float) -> tuple[float, float]:
    """x-range [-(3 trigamma(m) + 1), -trigamma(m)/16] bracketing the Kac concentration point -trigamma(m)."""
    center = trigamma(m)
    return -(3.0 * center + 1.0), -center / 16.0


def grand_partition(
    m: float,
    n: int,
    dt: float = MAX_POLYMER_DT,
    x_grid: Optional[Sequence[float]] = None,
    seed: int = DEFAULT_SEED,
    replica: int = 0,
) -> KacDiagnostic:
    """
    Grand-canonical partition function of one environment and its Kac density summary.

    gamma_n is evaluated at every requested x from a single backward sweep over [x_min * n, 0]; x values are snapped
    to the time grid x*n = -j*dt. When ``x_grid`` is omitted every grid point inside ``default_kac_window`` is used.

    Raises
    ------
    WindowMissError
        If the maximizer of m*x + gamma_n(x) sits on the boundary of the x grid.
    """
    if not m > 0:
        raise DomainError(f"'m' must be greater than zero, received {m}.")
    if x_grid is None:
        x_low, x_high = default_kac_window(m)
        indices = np.arange(math.ceil(-x_high * n / dt), math.floor(-x_low * n / dt) + 1)
    else:
        x_requested = np.asarray(x_grid, dtype=float)
        if x_requested.size < 3 or np.any(x_requested >= 0):
            raise DomainError("The x grid must hold at least three negative values.")
        indices = np.unique(np.round(-x_requested * n / dt).astype(int))
    steps = int(indices.max())

    lat = sample_lattice(n_paths=n, t_min=-steps * dt, t_max=0.0, dt=dt, seed=seed, anchor_time=0.0, replica=replica)
    profile = log_start_profile(lat.values, dt)

    # x * n = -j * dt sits at start index steps - j
    indices = np.sort(indices)[::-1]
    x = -indices * dt / n
    gamma_n = profile[steps - indices] / n
    exponent = n * (m * x + gamma_n)
    log_weights = _log_trapezoid_weights(x)

    argmax = int(np.argmax(exponent))
    if argmax in (0, len(x) - 1):
        raise WindowMissError(
            f"The maximizer x={x[argmax]} of m*x + gamma_n(x) lies on the boundary of [{x[0]}, {x[-1]}]."
        )
    log_xi = logsumexp(exponent + log_weights)
    in_window = np.abs(x + trigamma(m)) <= KAC_WINDOW_HALF_WIDTH
    mass_window = 0.0
    if in_window.any():
        mass_window = float(np.exp(logsumexp(exponent[in_window] + log_weights[in_window]) - log_xi))
    return KacDiagnostic(m=m, n=n, log_xi=float(log_xi) / n, argmax_x=float(x[argmax]), mass_window=mass_window)


def _grand_partition_replica(replica: int, m: float, n: int, dt: float, seed: int) -> KacDiagnostic:
    return grand_partition(m=m, n=n, dt=dt, seed=seed, replica=replica)


def kac_concentration(
    m: float,
    n_values: Sequence[int],
    dt: float = MAX_POLYMER_DT,
    replicas: int = 8,
    seed: int = DEFAULT_SEED,
    n_jobs: Optional[int] = None,
    progress_bar: bool = False,
) -> list[KacDiagnostic]:
    """Replica-averaged Kac diagnostics along increasing n, with standard errors of each averaged field."""
    trend = []
    for n in n_values:
        diagnostics = map_replicas(
            partial(_grand_partition_replica, m=m, n=n, dt=dt, seed=seed),
            replicas,
            n_jobs=n_jobs,
            progress_bar=progress_bar,
        )
        log_xi, log_xi_stderr = mean_and_stderr([diagnostic.log_xi for diagnostic in diagnostics])
        argmax_x, argmax_stderr = mean_and_stderr([diagnostic.argmax_x for diagnostic in diagnostics])
        mass, mass_stderr = mean_and_stderr([diagnostic.mass_window for diagnostic in diagnostics])
        trend.append(
            KacDiagnostic(
                m=m,
                n=n,
                log_xi=log_xi,
                argmax_x=argmax_x,
                mass_window=mass,
                replicas=replicas,
                log_xi_stderr=log_xi_stderr,
                argmax_stderr=argmax_stderr,
                mass_stderr=mass_stderr,
            )
        )
    return trend


def _sorted_jump_indices(rng: np.random.Generator, size: int, n: int, steps: int, dt: float) -> np.ndarray:
    """Sorted uniforms on [0, n] floored to grid indices, framed by the end indices 0 and ``steps``."""
    uniforms = np.sort(rng.uniform(0.0, float(n), size=(size, n - 1)), axis=1)
    jumps = np.minimum(np.floor(uniforms / dt).astype(np.int64), steps - 1)
    frame = np.empty((size, n + 1), dtype=np.int64)
    frame[:, 0] = 0
    frame[:, 1:n] = jumps
    frame[:, n] = steps
    return frame


def _path_energies(rows: np.ndarray, frame: np.ndarray) -> np.ndarray:
    energies = np.zeros(frame.shape[0])
    for k, path in enumerate(rows):
        energies += path[frame[:, k + 1]] - path[frame[:, k]]
    return energies


def _energy_chunks(lat: BrownianLattice, n: int, mc_samples: int, seed: int) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    rows = _rows(lat, n, 0.0, float(n))
    steps = rows.shape[1] - 1
    rng = keyed_rng(seed)
    for start in range(0, mc_samples, MC_CHUNK_SIZE):
        frame = _sorted_jump_indices(rng, min(MC_CHUNK_SIZE, mc_samples - start), n, steps, lat.dt)
        yield frame, _path_energies(rows, frame)


def moment_identity_check(
    lat: BrownianLattice, beta: float, n: int, mc_samples: int = 100_000, seed: int = DEFAULT_SEED
) -> MomentIdentityResult:
    """
    Both sides of E[exp(beta E_n) | environment] = ((n-1)!/n**(n-1)) Z_n(beta) on the same lattice.

    Jump times are sorted uniforms on [0, n] floored to the grid; a draw counts only when its grid indices are
    strictly increasing, which makes the left side an unbiased estimator of the grid right side.
    """
    if n < 2:
        raise ValueError(f"The moment identity needs at least one jump time (n >= 2), received {n}.")
    if mc_samples < 2:
        raise ValueError(f"'mc_samples' must be at least 2, received {mc_samples}.")
    weights = []
    for frame, energies in _energy_chunks(lat, n, mc_samples, seed):
        distinct = np.all(np.diff(frame[:, 1:n], axis=1) > 0, axis=1)
        weights.append(np.where(distinct, np.exp(beta * energies), 0.0))
    lhs, lhs_stderr = mean_and_stderr(np.concatenate(weights))

    log_prefactor = math.lgamma(n) - (n - 1) * math.log(n)
    rhs = math.exp(log_prefactor + log_partition_dp(lat, beta, n))
    return MomentIdentityResult(lhs=lhs, rhs=rhs, lhs_stderr=lhs_stderr, mc_samples=mc_samples)


def chernoff_tail_check(
    lat: BrownianLattice,
    n: int,
    x: float,
    thetas: Sequence[float],
    mc_samples: int = 100_000,
    seed: int = DEFAULT_SEED,
) -> list[ChernoffPoint]:
    """Empirical tail P(E_n > x*n) against exp(-theta*x*n) * mean(exp(theta*E_n)) on one Monte Carlo sample."""
    energies = np.concatenate([chunk for _, chunk in _energy_chunks(lat, n, mc_samples, seed)])
    tail_probability = float(np.mean(energies > x * n))
    points = []
    for theta in thetas:
        if not theta > 0:
            raise DomainError(f"Chernoff exponents must be greater than zero, received {theta}.")
        log_moment = logsumexp(theta * energies) - math.log(energies.size)
        points.append(
            ChernoffPoint(theta=theta, tail_probability=tail_probability, bound=math.exp(log_moment - theta * x * n))
        )
    return points


def log_poisson_moment_dp(lat: BrownianLattice, theta: float, n: int) -> float:
    """
    log E[exp(theta E_n(0, tau_1, ..., tau_n)) | environment] for unit-rate Poisson jump times tau_k.

    The final time tau_n is integrated against its exp(-t) density up to the end of the lattice, which must start
    at time 0.
    """
    *_, profile = _partition_levels(_rows(lat, n, 0.0, lat.t_max), theta, lat.dt)
    times = lat.times[time_index(lat, 0.0) :]
    return float(logsumexp(profile - times + math.log(lat.dt)))


def _free_energy_replica(replica: int, beta: float, n: int, dt: float, seed: int) -> float:
    lat = sample_lattice(n_paths=n, t_min=0.0, t_max=float(n), dt=dt, seed=seed, replica=replica)
    return log_partition_dp(lat, beta, n) / n


def _lpp_replica(replica: int, n: int, dt: float, seed: int) -> float:
    lat = sample_lattice(n_paths=n, t_min=0.0, t_max=float(n), dt=dt, seed=seed, replica=replica)
    return lpp_dp(lat, n, float(n)) / n


def _validate_estimator_inputs(n: int, dt: Optional[float], replicas: int) -> float:
    if n < 1:
        raise ValueError(f"'n' must be a positive integer, received {n}.")
    if replicas < 2:
        raise ValueError(f"At least two replicas are needed for a standard error, received {replicas}.")
    dt = default_dt(n) if dt is None else dt
    grid_steps(0.0, float(n), dt)
    return dt


def estimate_free_energy(
    beta: float,
    n: int,
    dt: Optional[float] = None,
    replicas: int = 100,
    seed: int = DEFAULT_SEED,
    n_jobs: Optional[int] = None,
    progress_bar: bool = False,
) -> EstimateRecord:
    """Replica mean and standard error of (1/n) log Z_n(beta), one independent lattice per replica."""
    dt = _validate_estimator_inputs(n, dt, replicas)
    values = map_replicas(
        partial(_free_energy_replica, beta=beta, n=n, dt=dt, seed=seed),
        replicas,
        n_jobs=n_jobs,
        progress_bar=progress_bar,
    )
    return summarize_replicas(values, n=n, dt=dt, seed=seed, quantity="free_energy")


def lpp_limit_estimate(
    n: int,
    dt: Optional[float] = None,
    replicas: int = 100,
    seed: int = DEFAULT_SEED,
    n_jobs: Optional[int] = None,
    progress_bar: bool = False,
) -> EstimateRecord:
    """Replica mean and standard error of (1/n) L_n(n)."""
    dt = _validate_estimator_inputs(n, dt, replicas)
    values = map_replicas(
        partial(_lpp_replica, n=n, dt=dt, seed=seed), replicas, n_jobs=n_jobs, progress_bar=progress_bar
    )
    return summarize_replicas(values, n=n, dt=dt, seed=seed, quantity="lpp")
