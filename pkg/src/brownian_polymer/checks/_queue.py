"""Checks of the generalized Brownian queue: Dufresne's law, quasi-reversibility and the tandem digamma limit."""

import warnings

import numpy as np
from scipy.stats import linregress

from .._errors import HorizonWarning
from .._registration import Importance, register_check
from .._types import CheckResult, ValidationContext, Verdict
from ..models import (
    BrownianLattice,
    dag_identity_check,
    default_horizon,
    departure_brownian_check,
    dufresne_target,
    estimate_queue,
    queue_lattice,
    queue_profiles,
    sample_r0,
    tandem,
    tandem_stage_matrix,
    warn_on_short_horizon,
)
from ..testing import gamma_log_samples
from ..utils import combined_stderr, mean_and_stderr

DUFRESNE_SAMPLES = 10_000
ORACLE_SAMPLES = 4_000
TANDEM_STAGES = 32
TANDEM_ENVIRONMENTS = 64
STAGE_ENVIRONMENTS = 200
TANDEM_WINDOW = 0.1


@register_check(importance=Importance.STATISTICAL, suite="queue")
def check_dufresne_moments(context: ValidationContext) -> CheckResult:
    """At m = 1 the stationary queue length has mean -digamma(1) and variance trigamma(1)."""
    samples = tandem_stage_matrix(1.0, 1, DUFRESNE_SAMPLES, seed=context.seed, n_jobs=context.n_jobs)[:, 0]
    target_mean, target_variance = dufresne_target(1.0)
    mean, stderr = mean_and_stderr(samples)
    variance, variance_stderr = mean_and_stderr((samples - mean) ** 2)
    passed = abs(mean - target_mean) <= 3.0 * stderr and abs(variance - target_variance) <= 3.0 * variance_stderr
    return CheckResult(
        detail=(
            f"Over {DUFRESNE_SAMPLES} samples: mean {mean:.4f} (stderr {stderr:.4f}, target {target_mean:.4f}), "
            f"variance {variance:.4f} (stderr {variance_stderr:.4f}, target {target_variance:.4f})."
        ),
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )


@register_check(importance=Importance.STATISTICAL, suite="queue")
def check_dufresne_gamma_oracle(context: ValidationContext) -> CheckResult:
    """Queue samples and -log of direct gamma(m) draws agree in location for m in (0.5, 1, 2)."""
    outcomes = {}
    for m in (0.5, 1.0, 2.0):
        queue_mean, queue_stderr = mean_and_stderr(
            tandem_stage_matrix(m, 1, ORACLE_SAMPLES, seed=context.seed, n_jobs=context.n_jobs)[:, 0]
        )
        oracle_mean, oracle_stderr = mean_and_stderr(gamma_log_samples(m, ORACLE_SAMPLES, seed=context.seed))
        window = 3.0 * combined_stderr(queue_stderr, oracle_stderr)
        outcomes[m] = (round(queue_mean - oracle_mean, 4), round(window, 4))
    passed = all(abs(difference) <= window for difference, window in outcomes.values())
    return CheckResult(
        detail=f"(mean difference, 3-stderr window) by m: {outcomes}.",
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="queue")
def check_tandem_base_case(context: ValidationContext) -> CheckResult:
    """A single-stage tandem reproduces the single queue on the same seed."""
    single = sample_r0(1.0, seed=context.seed)
    stages = tandem(1.0, 1, seed=context.seed)
    passed = stages.per_stage.shape == (1,) and stages.per_stage[0] == single.r0 and stages.mean_r == single.r0
    return CheckResult(
        detail=f"sample_r0 = {single.r0:.12f}, single-stage tandem = {stages.mean_r:.12f}.",
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )


@register_check(importance=Importance.STATISTICAL, suite="queue")
def check_tandem_digamma_limit(context: ValidationContext) -> CheckResult:
    """At m = 1 the stage average of 32 tandem queues is within 0.1 of -digamma(1)."""
    record = estimate_queue(1.0, TANDEM_STAGES, samples=TANDEM_ENVIRONMENTS, seed=context.seed, n_jobs=context.n_jobs)
    target, _ = dufresne_target(1.0)
    gap = abs(record.mean - target)
    return CheckResult(
        detail=(
            f"Mean stage average {record.mean:.4f} (stderr {record.stderr:.4f}) against {target:.4f}; "
            f"window {TANDEM_WINDOW}."
        ),
        verdict=Verdict.PASS if gap <= TANDEM_WINDOW else Verdict.FAIL,
    )


@register_check(importance=Importance.STATISTICAL, suite="queue")
def check_tandem_stage_independence(context: ValidationContext) -> CheckResult:
    """The regression slope of r_k(0) on the stage index k is zero within three standard errors."""
    stages = tandem_stage_matrix(1.0, 8, STAGE_ENVIRONMENTS, seed=context.seed, n_jobs=context.n_jobs)
    stage_index = np.tile(np.arange(1, stages.shape[1] + 1), stages.shape[0])
    fit = linregress(stage_index, stages.ravel())
    return CheckResult(
        detail=f"Slope {fit.slope:.5f} (stderr {fit.stderr:.5f}) over {STAGE_ENVIRONMENTS} environments of 8 stages.",
        verdict=Verdict.PASS if abs(fit.slope) <= 3.0 * fit.stderr else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="queue")
def check_horizon_robustness(context: ValidationContext) -> CheckResult:
    """Doubling the horizon changes r(0) by less than 1e-6 for m >= 0.5."""
    changes = {}
    for m in (0.5, 1.0):
        horizon = default_horizon(m)
        doubled = sample_r0(m, horizon=2.0 * horizon, seed=context.seed)
        changes[m] = abs(doubled.r0 - sample_r0(m, horizon, seed=context.seed).r0)
    return CheckResult(
        detail=f"|r(0; 2H) - r(0; H)| by m: {changes}; tolerance 1e-6.",
        verdict=Verdict.PASS if max(changes.values()) < 1e-6 else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="queue")
def check_monotone_in_service_rate(context: ValidationContext) -> CheckResult:
    """On a fixed environment r(0) strictly decreases as m grows."""
    lat = queue_lattice(1, default_horizon(0.5), 0.01, seed=context.seed)
    values = [float(queue_profiles(lat, m, 1)[0][-1]) for m in (0.5, 1.0, 2.0, 4.0)]
    passed = all(later < earlier for earlier, later in zip(values, values[1:]))
    return CheckResult(
        detail=f"r(0) at m = 0.5, 1, 2, 4: {[round(value, 6) for value in values]}.",
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="queue")
def check_telescoping_identity(context: ValidationContext) -> CheckResult:
    """r_1(0) + r_2(0) from the recursion equals the direct double quadrature of the telescoped integral."""
    recursion, quadrature = dag_identity_check(1.0, seed=context.seed)
    gap = abs(recursion - quadrature)
    return CheckResult(
        detail=f"Recursion {recursion:.12f}, quadrature {quadrature:.12f}; tolerance 1e-8.",
        verdict=Verdict.PASS if gap <= 1e-8 else Verdict.FAIL,
    )


@register_check(importance=Importance.STATISTICAL, suite="queue")
def check_departure_process(context: ValidationContext) -> CheckResult:
    """Departures have Brownian increments that are independent of each other and of the later queue length."""
    report = departure_brownian_check(1.0, seed=context.seed, n_jobs=context.n_jobs)
    summary = "; ".join(
        f"{verdict.name} {verdict.estimate:.4f} (target {verdict.target}, window {verdict.tolerance:.4f})"
        for verdict in report.verdicts
    )
    return CheckResult(
        detail=f"Over {report.n_samples} samples: {summary}.",
        verdict=Verdict.PASS if report.passed else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="queue")
def check_horizon_warning(context: ValidationContext) -> CheckResult:
    """A flat environment at the minimal horizon 20/m warns for m = 0.5 and stays silent for m = 1."""
    horizon, dt = 40.0, 0.1
    steps = int(round(horizon / dt))
    flat = BrownianLattice(
        n_paths=2, t_min=-horizon, t_max=0.0, dt=dt, values=np.zeros((2, steps + 1)), seed=0, anchor_index=steps
    )
    emitted = {}
    for m in (0.5, 1.0):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            warn_on_short_horizon(flat, m, 1)
        emitted[m] = any(issubclass(warning.category, HorizonWarning) for warning in caught)
    return CheckResult(
        detail=f"HorizonWarning emitted by m: {emitted}.",
        verdict=Verdict.PASS if emitted[0.5] and not emitted[1.0] else Verdict.FAIL,
    )
