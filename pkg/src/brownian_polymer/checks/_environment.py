"""Checks of the seeded Brownian lattice: determinism, grid layout, increment algebra and Brownian statistics."""

import tempfile
from pathlib import Path

import numpy as np

from .._registration import Importance, register_check
from .._types import CheckResult, ValidationContext, Verdict
from ..models import increment, load_lattice, sample_lattice, save_lattice, time_index
from ..utils import mean_and_stderr

STATISTICS_PATHS = 10_000


@register_check(importance=Importance.EXACT, suite="environment")
def check_lattice_determinism(context: ValidationContext) -> CheckResult:
    """Equal inputs give equal lattices, paths do not depend on how many siblings are drawn, replicas differ."""
    first = sample_lattice(n_paths=3, t_min=-1.0, t_max=2.0, dt=0.01, seed=context.seed, anchor_time=0.0)
    second = sample_lattice(n_paths=3, t_min=-1.0, t_max=2.0, dt=0.01, seed=context.seed, anchor_time=0.0)
    wider = sample_lattice(n_paths=5, t_min=-1.0, t_max=2.0, dt=0.01, seed=context.seed, anchor_time=0.0)
    other_replica = sample_lattice(
        n_paths=3, t_min=-1.0, t_max=2.0, dt=0.01, seed=context.seed, anchor_time=0.0, replica=1
    )
    identical = np.array_equal(first.values, second.values)
    path_stable = np.array_equal(first.values, wider.values[:3])
    replica_differs = not np.any(np.all(first.values == other_replica.values, axis=1))
    return CheckResult(
        detail=(
            f"Same seed identical: {identical}; paths unchanged by extra paths: {path_stable}; "
            f"every path changes with the replica: {replica_differs}."
        ),
        verdict=Verdict.PASS if identical and path_stable and replica_differs else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="environment")
def check_lattice_anchor(context: ValidationContext) -> CheckResult:
    """Every path vanishes at the anchor and the grid spans the requested window."""
    lat = sample_lattice(n_paths=4, t_min=-2.0, t_max=3.0, dt=0.05, seed=context.seed, anchor_time=0.0)
    anchored = bool(np.all(lat.values[:, lat.anchor_index] == 0.0)) and lat.anchor_index == time_index(lat, 0.0)
    span_error = abs(lat.grid_size * lat.dt - (lat.t_max - lat.t_min))
    return CheckResult(
        detail=f"Anchored at t=0: {anchored}; |grid_size * dt - span| = {span_error:.3g}.",
        verdict=Verdict.PASS if anchored and span_error <= 1e-12 else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="environment")
def check_increment_algebra(context: ValidationContext) -> CheckResult:
    """Increments vanish on empty intervals, are antisymmetric and telescope."""
    lat = sample_lattice(n_paths=2, t_min=0.0, t_max=2.0, dt=0.01, seed=context.seed)
    zero = increment(lat, 1, 0.7, 0.7) == 0.0
    antisymmetric = increment(lat, 1, 0.3, 1.5) == -increment(lat, 1, 1.5, 0.3)
    telescoping = abs(increment(lat, 0, 0.2, 1.9) - increment(lat, 0, 0.2, 1.1) - increment(lat, 0, 1.1, 1.9))
    passed = zero and antisymmetric and telescoping <= 1e-12
    return CheckResult(
        detail=f"Zero: {zero}; antisymmetric: {antisymmetric}; telescoping residual {telescoping:.3g}.",
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )


@register_check(importance=Importance.STATISTICAL, suite="environment")
def check_brownian_statistics(context: ValidationContext) -> CheckResult:
    """Unit increments have mean 0 and variance 1, and disjoint increments are uncorrelated."""
    lat = sample_lattice(n_paths=STATISTICS_PATHS, t_min=0.0, t_max=2.0, dt=0.01, seed=context.seed)
    start, middle, end = (time_index(lat, t) for t in (0.0, 1.0, 2.0))
    first = lat.values[:, middle] - lat.values[:, start]
    second = lat.values[:, end] - lat.values[:, middle]
    mean, stderr = mean_and_stderr(first)
    variance = float(np.var(first, ddof=1))
    correlation = float(np.corrcoef(first, second)[0, 1])
    passed = abs(mean) <= 3.0 * stderr and abs(variance - 1.0) <= 0.05 and abs(correlation) < 0.05
    return CheckResult(
        detail=(
            f"Over {STATISTICS_PATHS} paths: mean {mean:.4f} (stderr {stderr:.4f}), variance {variance:.4f} "
            f"(window 5%), disjoint-increment correlation {correlation:.4f} (window 0.05)."
        ),
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )


@register_check(importance=Importance.EXACT, suite="environment")
def check_lattice_dump(context: ValidationContext) -> CheckResult:
    """A lattice written to the binary dump reads back with the same grid, seed, anchor and values."""
    lat = sample_lattice(n_paths=3, t_min=-1.0, t_max=1.0, dt=0.1, seed=context.seed, anchor_time=0.0)
    with tempfile.TemporaryDirectory() as folder:
        file_path = Path(folder) / "lattice.bin"
        save_lattice(lat, file_path)
        loaded = load_lattice(file_path)
    same_grid = (loaded.n_paths, loaded.t_min, loaded.t_max, loaded.dt, loaded.seed, loaded.anchor_index) == (
        lat.n_paths,
        lat.t_min,
        lat.t_max,
        lat.dt,
        lat.seed,
        lat.anchor_index,
    )
    same_values = np.array_equal(loaded.values, lat.values)
    return CheckResult(
        detail=f"Header preserved: {same_grid}; values preserved: {same_values}.",
        verdict=Verdict.PASS if same_grid and same_values else Verdict.FAIL,
    )
