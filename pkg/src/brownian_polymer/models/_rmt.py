"""Largest eigenvalue of the Gaussian Unitary Ensemble through its tridiagonal model, and the link to last passage."""

import math
from functools import partial
from typing import Optional

import numpy as np

from .._replicas import map_replicas
from .._types import DEFAULT_SEED
from ..utils import combined_stderr, mean_and_stderr
from ._environment import coarsen_lattice, keyed_rng, sample_lattice
from ._polymer import lpp_dp
from ._types import GueComparison, TridiagonalMatrix

EIGENVALUE_TOLERANCE = 1e-10
DEFAULT_GUE_DT = 1.0 / 2048
RICHARDSON_DENOMINATOR = math.sqrt(2.0) - 1.0  # grid last-passage bias scales like sqrt(dt)


def sample_gue_tridiag(n: int, seed: int = DEFAULT_SEED, replica: int = 0) -> TridiagonalMatrix:
    """
    Tridiagonal matrix with the spectrum of an n x n GUE matrix whose diagonal entries are standard Gaussians.

    The diagonal is iid Gaussian(0, 1) and off-diagonal entry k is chi with 2(n - k) degrees of freedom divided by
    sqrt(2), drawn as the square root of a gamma(n - k, scale=2) variate.
    """
    if n < 1:
        raise ValueError(f"'n' must be a positive integer, received {n}.")
    rng = keyed_rng(seed, replica)
    diag = rng.normal(0.0, 1.0, size=n)
    offdiag = np.sqrt(rng.gamma(shape=np.arange(n - 1, 0, -1, dtype=float), scale=2.0)) / math.sqrt(2.0)
    return TridiagonalMatrix(diag=diag, offdiag=offdiag)


def to_dense(matrix: TridiagonalMatrix) -> np.ndarray:
    return np.diag(matrix.diag) + np.diag(matrix.offdiag, k=1) + np.diag(matrix.offdiag, k=-1)


def gershgorin_bounds(matrix: TridiagonalMatrix) -> tuple[float, float]:
    radius = np.zeros(matrix.size)
    radius[:-1] += matrix.offdiag
    radius[1:] += matrix.offdiag
    return float(np.min(matrix.diag - radius)), float(np.max(matrix.diag + radius))


def sturm_count(matrix: TridiagonalMatrix, lam: float) -> int:
    """Number of eigenvalues strictly below ``lam``: the negative pivots of the LDL^T factorization of T - lam I."""
    diag = matrix.diag.tolist()
    squared = (matrix.offdiag**2).tolist()
    pivot_floor = np.finfo(float).tiny * max(1.0, max(squared, default=0.0))
    count = 0
    pivot = 1.0
    for index, value in enumerate(diag):
        pivot = value - lam - (squared[index - 1] / pivot if index else 0.0)
        if pivot == 0.0:
            pivot = -pivot_floor
        if pivot < 0.0:
            count += 1
    return count


def largest_eigenvalue(matrix: TridiagonalMatrix, tolerance: float = EIGENVALUE_TOLERANCE) -> float:
    """Largest eigenvalue by bisection on the Sturm count inside the Gershgorin interval."""
    if matrix.size == 1:
        return float(matrix.diag[0])
    lower, upper = gershgorin_bounds(matrix)
    upper += tolerance
    while upper - lower > tolerance:
        middle = 0.5 * (lower + upper)
        if sturm_count(matrix, middle) == matrix.size:
            upper = middle
        else:
            lower = middle
    return 0.5 * (lower + upper)


def _gue_lpp_replica(replica: int, n: int, dt: float, seed: int) -> tuple[float, float, float]:
    eigenvalue = largest_eigenvalue(sample_gue_tridiag(n, seed=seed, replica=replica))
    lat = sample_lattice(n_paths=n, t_min=0.0, t_max=1.0, dt=dt, seed=seed, replica=replica)
    return eigenvalue, lpp_dp(lat, n, 1.0), lpp_dp(coarsen_lattice(lat, 2), n, 1.0)


def gue_vs_lpp(
    n: int,
    replicas: int = 500,
    dt: float = DEFAULT_GUE_DT,
    seed: int = DEFAULT_SEED,
    n_jobs: Optional[int] = None,
    progress_bar: bool = False,
) -> GueComparison:
    """
    Compare the mean largest GUE eigenvalue with the mean grid last-passage time L_n(1).

    The last-passage value is also computed on the same paths at twice the step; the mean fine-minus-coarse gap
    divided by sqrt(2) - 1 estimates the remaining grid bias and widens the 3-standard-error window. The grid value
    can only underestimate the continuum, so the eigenvalue mean must also clear the last-passage mean minus three
    standard errors.
    """
    if replicas < 2:
        raise ValueError(f"At least two replicas are needed for a standard error, received {replicas}.")
    samples = np.array(
        map_replicas(
            partial(_gue_lpp_replica, n=n, dt=dt, seed=seed), replicas, n_jobs=n_jobs, progress_bar=progress_bar
        )
    )
    gue_mean, gue_stderr = mean_and_stderr(samples[:, 0])
    lpp_mean, lpp_stderr = mean_and_stderr(samples[:, 1])
    allowance = max(0.0, float(np.mean(samples[:, 1] - samples[:, 2]))) / RICHARDSON_DENOMINATOR

    window = 3.0 * combined_stderr(gue_stderr, lpp_stderr)
    return GueComparison(
        n=n,
        replicas=replicas,
        seed=seed,
        dt=dt,
        gue_mean=gue_mean,
        gue_stderr=gue_stderr,
        lpp_mean=lpp_mean,
        lpp_stderr=lpp_stderr,
        allowance=allowance,
        agrees=abs(gue_mean - lpp_mean) <= window + allowance,
        one_sided=gue_mean >= lpp_mean - window,
    )
