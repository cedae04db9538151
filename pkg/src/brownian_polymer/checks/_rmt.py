"""Checks of the tridiagonal GUE model and its agreement with Brownian last passage."""

import math

import numpy as np

from .._registration import Importance, register_check
from .._types import CheckResult, ValidationContext, Verdict
from ..models import (
    TridiagonalMatrix,
    gue_vs_lpp,
    largest_eigenvalue,
    sample_gue_tridiag,
    sturm_count,
    to_dense,
)
from ..testing import dense_gue_largest_eigenvalues
from ..utils import mean_and_stderr, within_stderr

SMALL_SAMPLES = 10_000
EDGE_SAMPLES = 200
COMPARISON_REPLICAS = 500
GUE_PAIR_MEAN = 2.0 / math.sqrt(math.pi)
GUE_PAIR_SIGMAS = 4.0


def _largest_eigenvalues(n: int, size: int, seed: int) -> np.ndarray:
    return np.array([largest_eigenvalue(sample_gue_tridiag(n, seed=seed, replica=replica)) for replica in range(size)])


@register_check(importance=Importance.EXACT, suite="rmt")
def check_tridiagonal_small_cases(context: ValidationContext) -> CheckResult:
    """A 1x1 matrix returns its entry and [[0, b], [b, 0]] returns b."""
    single = largest_eigenvalue(TridiagonalMatrix(diag=np.array([0.7]), offdiag=np.array([])))
    pair = largest_eigenvalue(TridiagonalMatrix(diag=np.zeros(2), offdiag=np.array([1.3])))
    passed = single == 0.7 and abs(pair - 1.3) <= 1e-9
    return CheckResult(
        detail=f"1x1 largest eigenvalue {single}; 2x2 largest eigenvalue {pair:.12f} against 1.3.",
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="rmt")
def check_sturm_bisection(context: ValidationContext) -> CheckResult:
    """Bisection on the Sturm count matches a dense symmetric eigensolver on a random 10x10 model."""
    matrix = sample_gue_tridiag(10, seed=context.seed)
    dense_top = float(np.linalg.eigvalsh(to_dense(matrix))[-1])
    bisected = largest_eigenvalue(matrix)
    counts = (sturm_count(matrix, dense_top - 1e-8), sturm_count(matrix, dense_top + 1e-8))
    passed = abs(bisected - dense_top) <= 1e-8 and counts == (9, 10)
    return CheckResult(
        detail=(
            f"Bisection {bisected:.12f}, eigvalsh {dense_top:.12f}; eigenvalues below top -/+ 1e-8: {counts}."
        ),
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )


@register_check(importance=Importance.STATISTICAL, suite="rmt")
def check_gue_single_entry(context: ValidationContext) -> CheckResult:
    """For n = 1 the largest eigenvalue is the standard Gaussian diagonal entry."""
    samples = _largest_eigenvalues(1, SMALL_SAMPLES, context.seed)
    variance = float(np.var(samples, ddof=1))
    return CheckResult(
        detail=f"Sample variance {variance:.4f} over {SMALL_SAMPLES} draws; window 5% around 1.",
        verdict=Verdict.PASS if abs(variance - 1.0) <= 0.05 else Verdict.FAIL,
    )


@register_check(importance=Importance.STATISTICAL, suite="rmt")
def check_gue_dense_oracle(context: ValidationContext) -> CheckResult:
    """
    At n = 2 the tridiagonal model and dense Hermitian matrices both have mean largest eigenvalue 2 / sqrt(pi).

    The largest eigenvalue is (a + b)/2 + sqrt((a - b)**2/4 + |z|**2), and the square-root argument is half a
    chi-square variable with three degrees of freedom.
    """
    samplers = {
        "tridiagonal": _largest_eigenvalues(2, SMALL_SAMPLES, context.seed),
        "dense": dense_gue_largest_eigenvalues(2, SMALL_SAMPLES, seed=context.seed),
    }
    summaries = {name: mean_and_stderr(samples) for name, samples in samplers.items()}
    passed = all(
        within_stderr(mean, GUE_PAIR_MEAN, stderr, n_sigma=GUE_PAIR_SIGMAS) for mean, stderr in summaries.values()
    )
    detail = "; ".join(f"{name} mean {mean:.4f} (stderr {stderr:.4f})" for name, (mean, stderr) in summaries.items())
    return CheckResult(
        detail=f"{detail}; closed value {GUE_PAIR_MEAN:.4f}, window {GUE_PAIR_SIGMAS:g} stderr.",
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )


@register_check(importance=Importance.STATISTICAL, suite="rmt")
def check_gue_edge_scaling(context: ValidationContext) -> CheckResult:
    """The largest eigenvalue sits just below the spectral edge 2 sqrt(n)."""
    scaled_50 = float(np.mean(_largest_eigenvalues(50, EDGE_SAMPLES, context.seed))) / np.sqrt(50)
    scaled_64 = float(np.mean(_largest_eigenvalues(64, EDGE_SAMPLES, context.seed))) / (2.0 * np.sqrt(64))
    passed = 1.7 <= scaled_50 <= 2.0 and 0.85 <= scaled_64 <= 1.0
    return CheckResult(
        detail=(
            f"Mean over {EDGE_SAMPLES} draws: n=50 mean / sqrt(n) = {scaled_50:.4f} (window [1.7, 2.0]); "
            f"n=64 mean / (2 sqrt(n)) = {scaled_64:.4f} (window [0.85, 1.0])."
        ),
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )


@register_check(importance=Importance.STATISTICAL, suite="rmt")
def check_gue_matches_last_passage(context: ValidationContext) -> CheckResult:
    """The mean largest eigenvalue equals the mean last-passage time L_n(1) for n = 1 and n = 16."""
    comparisons = {
        n: gue_vs_lpp(n, replicas=COMPARISON_REPLICAS, seed=context.seed, n_jobs=context.n_jobs) for n in (1, 16)
    }
    summary = "; ".join(
        f"n={n}: GUE {comparison.gue_mean:.4f} (stderr {comparison.gue_stderr:.4f}), last passage "
        f"{comparison.lpp_mean:.4f} (stderr {comparison.lpp_stderr:.4f}), grid allowance {comparison.allowance:.4f}"
        for n, comparison in comparisons.items()
    )
    passed = all(comparison.verdict for comparison in comparisons.values())
    return CheckResult(detail=f"{summary}.", verdict=Verdict.PASS if passed else Verdict.FAIL)
