"""Checks of the quenched polymer estimators against brute-force oracles, exact identities and the closed form."""

import dataclasses
import math

import numpy as np
from scipy.special import gammaln, logsumexp

from .._registration import Importance, register_check
from .._types import CheckResult, ValidationContext, Verdict
from ..models import (
    EULER_GAMMA,
    BrownianLattice,
    chernoff_tail_check,
    discrete_simplex_log_volume,
    estimate_free_energy,
    free_energy,
    gamma_n_dp,
    kac_concentration,
    keyed_rng,
    log_partition_dp,
    log_poisson_moment_dp,
    log_start_profile,
    lpp_dp,
    lpp_limit_estimate,
    lpp_min_dp,
    moment_identity_check,
    negate_lattice,
    sample_lattice,
    time_index,
    trigamma,
)
from ..testing import brute_force_log_partition, brute_force_lpp
from ..utils import is_ascending_series

ORACLE_DT = 0.05
SIMULATION_DT = 0.025
SIMULATION_REPLICAS = 100
TREND_REPLICAS = 400
KAC_REPLICAS = 8
KAC_WINDOW_GAPS = (0.15, 0.2)
KAC_TREND_SIZES = (16, 32, 48)
KAC_TREND_REPLICAS = 512


def _oracle_lattice(seed: int, n_paths: int = 3, t_max: float = 3.0, dt: float = ORACLE_DT) -> BrownianLattice:
    return sample_lattice(n_paths=n_paths, t_min=0.0, t_max=t_max, dt=dt, seed=seed)


def _backward_lattice(seed: int, n_paths: int = 3, span: float = 3.0) -> BrownianLattice:
    return sample_lattice(n_paths=n_paths, t_min=-span, t_max=0.0, dt=ORACLE_DT, seed=seed, anchor_time=0.0)


@register_check(importance=Importance.EXACT, suite="polymer")
def check_partition_single_path(context: ValidationContext) -> CheckResult:
    """With one path the partition function has no integration variable: log Z_1 = beta * B(0, 1)."""
    lat = _oracle_lattice(context.seed, n_paths=1, t_max=1.0)
    beta = 0.7
    error = abs(log_partition_dp(lat, beta, 1) - beta * (lat.values[0, -1] - lat.values[0, 0]))
    return CheckResult(
        detail=f"|log Z_1 - beta B(0, 1)| = {error:.3g}.",
        verdict=Verdict.PASS if error == 0.0 else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="polymer")
def check_partition_brute_force(context: ValidationContext) -> CheckResult:
    """The transfer recursion equals explicit ordered sums over jump indices for n = 2 and 3."""
    lat = _oracle_lattice(context.seed)
    errors = {
        (n, beta): abs(log_partition_dp(lat, beta, n) - brute_force_log_partition(lat, beta, n))
        for n in (2, 3)
        for beta in (0.5, 2.0)
    }
    worst = max(errors.values())
    return CheckResult(
        detail=f"Largest |DP - brute force| over (n, beta) in {list(errors)} is {worst:.3g}; tolerance 1e-10.",
        verdict=Verdict.PASS if worst <= 1e-10 else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="polymer")
def check_lpp_brute_force(context: ValidationContext) -> CheckResult:
    """The running-max recursion equals an exhaustive scan for n = 1, 2 and 3."""
    lat = _oracle_lattice(context.seed)
    worst = max(abs(lpp_dp(lat, n, float(n)) - brute_force_lpp(lat, n, float(n))) for n in (1, 2, 3))
    return CheckResult(
        detail=f"Largest |L_n DP - exhaustive scan| for n in (1, 2, 3) is {worst:.3g}.",
        verdict=Verdict.PASS if worst <= 1e-12 else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="polymer")
def check_min_max_symmetry(context: ValidationContext) -> CheckResult:
    """The min-plus passage value is minus the max-plus value on the negated paths."""
    lat = _oracle_lattice(context.seed)
    gaps = [abs(lpp_min_dp(lat, n, float(n)) + lpp_dp(negate_lattice(lat), n, float(n))) for n in (1, 2, 3)]
    return CheckResult(
        detail=f"|V_n + L_n(-B)| for n in (1, 2, 3): {gaps}.",
        verdict=Verdict.PASS if max(gaps) <= 1e-12 else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="polymer")
def check_shift_invariance(context: ValidationContext) -> CheckResult:
    """Adding a constant to each whole path leaves every estimator unchanged."""
    lat = _oracle_lattice(context.seed)
    shifts = keyed_rng(context.seed, 2).normal(0.0, 10.0, size=(lat.n_paths, 1))
    shifted = dataclasses.replace(lat, values=lat.values + shifts)
    gaps = [
        abs(log_partition_dp(lat, 1.3, 3) - log_partition_dp(shifted, 1.3, 3)),
        abs(lpp_dp(lat, 3, 3.0) - lpp_dp(shifted, 3, 3.0)),
        abs(lpp_min_dp(lat, 3, 3.0) - lpp_min_dp(shifted, 3, 3.0)),
    ]
    return CheckResult(
        detail=f"Changes of (log Z_3, L_3, V_3) under path shifts: {gaps}; tolerance 1e-9.",
        verdict=Verdict.PASS if max(gaps) <= 1e-9 else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="polymer")
def check_beta_zero_volume(context: ValidationContext) -> CheckResult:
    """At beta = 0 the recursion counts strictly ordered jump indices: log(C(M, n - 1) dt**(n - 1))."""
    lat = _oracle_lattice(context.seed, n_paths=5, t_max=5.0)
    worst = 0.0
    for n in (1, 2, 3, 5):
        expected = discrete_simplex_log_volume(n, time_index(lat, float(n)), lat.dt)
        worst = max(worst, abs(log_partition_dp(lat, 0.0, n) - expected) / max(1.0, abs(expected)))
    return CheckResult(
        detail=f"Largest relative gap to the discrete simplex volume is {worst:.3g}; tolerance 1e-10.",
        verdict=Verdict.PASS if worst <= 1e-10 else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="polymer")
def check_zero_temperature_bridge(context: ValidationContext) -> CheckResult:
    """
    (1/beta) log Z_n is sandwiched around the strictly ordered last-passage value and closes in as beta grows.

    The largest term gives the lower side and the count of index tuples the upper side; at beta = 1000 the gap is
    at most 5 log(grid_size) / beta.
    """
    n = 3
    lat = _oracle_lattice(context.seed, dt=0.01)
    strict = lpp_dp(lat, n, float(n), strict=True)
    log_volume = discrete_simplex_log_volume(n, lat.grid_size, lat.dt)
    inside, gaps = True, []
    for beta in (10.0, 100.0, 1000.0):
        gap = log_partition_dp(lat, beta, n) / beta - strict
        inside = inside and (n - 1) * math.log(lat.dt) / beta - 1e-12 <= gap <= log_volume / beta + 1e-12
        gaps.append(gap)
    final_window = 5.0 * math.log(lat.grid_size) / 1000.0
    relaxed = lpp_dp(lat, n, float(n)) >= strict
    passed = inside and abs(gaps[-1]) <= final_window and relaxed
    return CheckResult(
        detail=(
            f"(1/beta) log Z - L_strict at beta = 10, 100, 1000: {[round(gap, 6) for gap in gaps]}; "
            f"within bounds: {inside}; final window {final_window:.4f}."
        ),
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="polymer")
def check_start_profile(context: ValidationContext) -> CheckResult:
    """The backward start profile reproduces the forward recursion gamma_n(x) at every tested start point."""
    n = 3
    lat = _backward_lattice(context.seed)
    profile = log_start_profile(lat.values, lat.dt)
    worst = max(
        abs(profile[time_index(lat, x * n)] - n * gamma_n_dp(lat, x, n)) for x in (-1.0, -0.8, -0.5, -0.2)
    )
    return CheckResult(
        detail=f"Largest |backward profile - n gamma_n(x)| is {worst:.3g}; tolerance 1e-10.",
        verdict=Verdict.PASS if worst <= 1e-10 else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="polymer")
def check_limit_shape_brute_force(context: ValidationContext) -> CheckResult:
    """gamma_2(x) equals the explicit single sum over the window [2x, 0]."""
    lat = _backward_lattice(context.seed, n_paths=2)
    worst = max(
        abs(gamma_n_dp(lat, x, 2) - brute_force_log_partition(lat, 1.0, 2, t_start=2.0 * x, t_end=0.0) / 2.0)
        for x in (-1.5, -1.0, -0.3)
    )
    return CheckResult(
        detail=f"Largest |gamma_2 DP - brute force| is {worst:.3g}; tolerance 1e-12.",
        verdict=Verdict.PASS if worst <= 1e-12 else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="polymer")
def check_embedding_inequality(context: ValidationContext) -> CheckResult:
    """For y < x, Z_n(y) >= exp(B1(yn, xn)) Z_n(x): the longer window contains every path of the shorter one."""
    n = 3
    lat = _backward_lattice(context.seed)
    profile = log_start_profile(lat.values, lat.dt)
    first_path = lat.values[0]
    worst = -math.inf
    for start in range(1, lat.grid_size - n + 2):
        embedded = first_path[start] - first_path[:start] + profile[start]
        worst = max(worst, float(np.max(embedded - profile[:start])))
    return CheckResult(
        detail=f"Largest excess of exp(B1) Z_n(x) over Z_n(y) in log scale is {worst:.3g}; tolerance 1e-9.",
        verdict=Verdict.PASS if worst <= 1e-9 else Verdict.FAIL,
    )


@register_check(importance=Importance.STATISTICAL, suite="polymer")
def check_moment_identity(context: ValidationContext) -> CheckResult:
    """E[exp(beta E_n) | environment] = ((n-1)!/n**(n-1)) Z_n(beta) within 4 Monte Carlo standard errors."""
    outcomes = {}
    for n, beta in ((2, 0.0), (2, 0.5), (3, 1.0)):
        lat = _oracle_lattice(context.seed, n_paths=n, t_max=float(n), dt=SIMULATION_DT)
        result = moment_identity_check(lat, beta, n, mc_samples=1_000_000, seed=context.seed)
        outcomes[(n, beta)] = (result.lhs, result.rhs, result.lhs_stderr)
    passed = all(abs(lhs - rhs) <= 4.0 * stderr + 1e-12 for lhs, rhs, stderr in outcomes.values())
    return CheckResult(
        detail=f"(lhs, rhs, stderr) by (n, beta): {outcomes}.",
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="polymer")
def check_lpp_lower_bound(context: ValidationContext) -> CheckResult:
    """(1/n) L_n(n) >= (1/(beta n)) log(((n-1)!/n**(n-1)) Z_n(beta)) on any lattice."""
    lat = _oracle_lattice(context.seed, n_paths=5, t_max=5.0)
    worst = -math.inf
    for n in (2, 3, 5):
        passage = lpp_dp(lat, n, float(n)) / n
        for beta in (0.5, 1.0, 2.0):
            moment = (math.lgamma(n) - (n - 1) * math.log(n) + log_partition_dp(lat, beta, n)) / (beta * n)
            worst = max(worst, moment - passage)
    return CheckResult(
        detail=f"Largest excess of the log-moment bound over (1/n) L_n(n) is {worst:.3g}.",
        verdict=Verdict.PASS if worst <= 1e-12 else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="polymer")
def check_chernoff_bound(context: ValidationContext) -> CheckResult:
    """The empirical energy tail never exceeds its exponential-moment bound on the same sample."""
    n = 3
    lat = _oracle_lattice(context.seed, dt=SIMULATION_DT)
    points = [
        point
        for x in (0.5, 1.0)
        for point in chernoff_tail_check(lat, n, x, thetas=(0.5, 1.0, 2.0), mc_samples=100_000, seed=context.seed)
    ]
    violations = [point for point in points if point.tail_probability > point.bound]
    return CheckResult(
        detail=f"{len(violations)} of {len(points)} (x, theta) pairs have a tail above its bound.",
        verdict=Verdict.PASS if not violations else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="polymer")
def check_poisson_moment_at_zero(context: ValidationContext) -> CheckResult:
    """At theta = 0 the Poisson-time moment reduces to a sum of index counts weighted by the exponential density."""
    n = 3
    lat = _oracle_lattice(context.seed, t_max=40.0)
    steps = np.arange(n - 1, lat.grid_size + 1)
    log_counts = gammaln(steps + 1) - gammaln(n) - gammaln(steps - n + 2) + (n - 1) * math.log(lat.dt)
    expected = float(logsumexp(log_counts - steps * lat.dt + math.log(lat.dt)))
    error = abs(log_poisson_moment_dp(lat, 0.0, n) - expected)
    return CheckResult(
        detail=f"|log moment at theta=0 - closed count| = {error:.3g}; tolerance 1e-10.",
        verdict=Verdict.PASS if error <= 1e-10 else Verdict.FAIL,
    )


@register_check(importance=Importance.STATISTICAL, suite="polymer")
def check_free_energy_simulation(context: ValidationContext) -> CheckResult:
    """At beta = 1 and n = 64 the replica mean of (1/n) log Z_n is within 10% of f(1)."""
    target = free_energy(1.0).value
    record = estimate_free_energy(
        1.0, 64, dt=SIMULATION_DT, replicas=SIMULATION_REPLICAS, seed=context.seed, n_jobs=context.n_jobs
    )
    error = abs(record.mean - target)
    return CheckResult(
        detail=f"Mean {record.mean:.4f} (stderr {record.stderr:.4f}) against f(1) = {target:.4f}.",
        verdict=Verdict.PASS if error <= 0.1 * abs(target) else Verdict.FAIL,
    )


@register_check(importance=Importance.TREND, suite="polymer")
def check_free_energy_trend(context: ValidationContext) -> CheckResult:
    """The distance of the replica mean to f(1) decreases at every step of n = 16, 32, 64."""
    target = free_energy(1.0).value
    records = [
        estimate_free_energy(
            1.0, n, dt=SIMULATION_DT, replicas=TREND_REPLICAS, seed=context.seed, n_jobs=context.n_jobs
        )
        for n in (16, 32, 64)
    ]
    errors = [abs(record.mean - target) for record in records]
    return CheckResult(
        detail=f"|mean - f(1)| along n = 16, 32, 64 over {TREND_REPLICAS} replicas: {[round(e, 4) for e in errors]}.",
        verdict=Verdict.PASS if is_ascending_series([-error for error in errors], strict=True) else Verdict.FAIL,
    )


@register_check(importance=Importance.STATISTICAL, suite="polymer")
def check_lpp_simulation(context: ValidationContext) -> CheckResult:
    """(1/n) L_n(n) has mean 0 at n = 1 and lies in [1.6, 2.0] at n = 64, below the limit 2."""
    single = lpp_limit_estimate(1, dt=SIMULATION_DT, replicas=SIMULATION_REPLICAS, seed=context.seed)
    large = lpp_limit_estimate(
        64, dt=SIMULATION_DT, replicas=SIMULATION_REPLICAS, seed=context.seed, n_jobs=context.n_jobs
    )
    passed = abs(single.mean) <= 3.0 * single.stderr and 1.6 <= large.mean <= 2.0
    return CheckResult(
        detail=(
            f"n = 1: mean {single.mean:.4f} (stderr {single.stderr:.4f}); "
            f"n = 64: mean {large.mean:.4f} (stderr {large.stderr:.4f})."
        ),
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )


@register_check(importance=Importance.TREND, suite="polymer")
def check_lpp_trend(context: ValidationContext) -> CheckResult:
    """The mean of (1/n) L_n(n) increases along n = 8, 16, 32, 64."""
    records = [
        lpp_limit_estimate(n, dt=SIMULATION_DT, replicas=TREND_REPLICAS, seed=context.seed, n_jobs=context.n_jobs)
        for n in (8, 16, 32, 64)
    ]
    means = [record.mean for record in records]
    return CheckResult(
        detail=f"Means along n = 8, 16, 32, 64 over {TREND_REPLICAS} replicas: {[round(mean, 4) for mean in means]}.",
        verdict=Verdict.PASS if is_ascending_series(means, strict=True) else Verdict.FAIL,
    )


@register_check(importance=Importance.STATISTICAL, suite="polymer")
def check_kac_concentration(context: ValidationContext) -> CheckResult:
    """At m = 1 and n = 48 (1/n) log Xi is within 0.15 of Euler's constant and the Kac peak within 0.2 of -pi**2/6."""
    (diagnostic,) = kac_concentration(
        1.0, [48], dt=SIMULATION_DT, replicas=KAC_REPLICAS, seed=context.seed, n_jobs=context.n_jobs
    )
    xi_window, argmax_window = KAC_WINDOW_GAPS
    xi_gap = abs(diagnostic.log_xi - EULER_GAMMA)
    argmax_gap = abs(diagnostic.argmax_x + trigamma(1.0))
    return CheckResult(
        detail=(
            f"(1/n) log Xi = {diagnostic.log_xi:.4f}, gap {xi_gap:.4f} (window {xi_window}); "
            f"argmax = {diagnostic.argmax_x:.4f}, gap {argmax_gap:.4f} (window {argmax_window}); "
            f"mass in window = {diagnostic.mass_window:.3f}."
        ),
        verdict=Verdict.PASS if xi_gap <= xi_window and argmax_gap <= argmax_window else Verdict.FAIL,
    )


@register_check(importance=Importance.TREND, suite="polymer")
def check_kac_mass_trend(context: ValidationContext) -> CheckResult:
    """The Kac mass near -trigamma(1) increases along n = 16, 32, 48."""
    trend = kac_concentration(
        1.0, KAC_TREND_SIZES, dt=SIMULATION_DT, replicas=KAC_TREND_REPLICAS, seed=context.seed, n_jobs=context.n_jobs
    )
    masses = [diagnostic.mass_window for diagnostic in trend]
    stderrs = [diagnostic.mass_stderr for diagnostic in trend]
    return CheckResult(
        detail=(
            f"Kac mass along n = {', '.join(map(str, KAC_TREND_SIZES))}: {[round(mass, 3) for mass in masses]} "
            f"(stderr {[round(stderr, 3) for stderr in stderrs]})."
        ),
        verdict=Verdict.PASS if is_ascending_series(masses, strict=True) else Verdict.FAIL,
    )
