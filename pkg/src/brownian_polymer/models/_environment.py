"""Seeded sampling, slicing and storage of Brownian lattices, and replica summaries."""

import math
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .._errors import GridError
from .._types import DEFAULT_SEED
from ._types import BrownianLattice, EstimateRecord

GRID_RTOL = 1e-12
TIME_TOLERANCE = 1e-9

LATTICE_HEADER_DTYPE = np.dtype(
    [("n_paths", "<i8"), ("t_min", "<f8"), ("t_max", "<f8"), ("dt", "<f8"), ("seed", "<u8")]
)

PathType = Union[str, Path]


def grid_steps(t_min: float, t_max: float, dt: float) -> int:
    """Return the number of dt steps spanning [t_min, t_max], raising GridError if dt does not divide the span."""
    if not all(math.isfinite(value) for value in (t_min, t_max, dt)):
        raise GridError(f"Grid bounds and step must be finite, received t_min={t_min}, t_max={t_max}, dt={dt}.")
    if dt <= 0:
        raise GridError(f"'dt' must be greater than zero, received {dt}.")
    if t_min >= t_max:
        raise GridError(f"'t_min' must be less than 't_max', received [{t_min}, {t_max}].")
    span = t_max - t_min
    steps = int(round(span / dt))
    if steps < 1 or not math.isclose(steps * dt, span, rel_tol=GRID_RTOL, abs_tol=GRID_RTOL):
        raise GridError(f"'dt'={dt} does not divide the span {span} of [{t_min}, {t_max}].")
    return steps


def _grid_index(t_min: float, dt: float, steps: int, t: float) -> int:
    position = (t - t_min) / dt
    index = int(round(position))
    if abs(position - index) > TIME_TOLERANCE or not 0 <= index <= steps:
        raise GridError(f"Time {t} is not a point of the grid t_min={t_min}, dt={dt} with {steps} steps.")
    return index


def keyed_rng(seed: int, *key: int) -> np.random.Generator:
    """Generator keyed by (seed, *key); lattice paths use the key (replica, path)."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def sample_lattice(
    n_paths: int,
    t_min: float,
    t_max: float,
    dt: float,
    seed: int = DEFAULT_SEED,
    anchor_time: Optional[float] = None,
    replica: int = 0,
) -> BrownianLattice:
    """
    Sample independent standard Brownian paths on the grid t_min + j*dt, each vanishing at ``anchor_time``.

    Every path is built from Gaussian(0, dt) increments drawn outward from the anchor, first the forward increments
    and then the backward ones, from a generator keyed by (seed, replica, path index).

    Parameters
    ----------
    n_paths : int
    t_min, t_max : float
    dt : float
        Must divide t_max - t_min.
    seed : int
        Nonnegative 64-bit seed shared by all paths and replicas of one experiment.
    anchor_time : float, optional
        Grid time where all paths vanish. Defaults to t_min.
    replica : int
        Replica index; distinct replicas draw independent lattices from the same seed.
    """
    if n_paths < 1:
        raise ValueError(f"'n_paths' must be a positive integer, received {n_paths}.")
    steps = grid_steps(t_min, t_max, dt)
    anchor_index = _grid_index(t_min, dt, steps, t_min if anchor_time is None else anchor_time)

    values = np.zeros((n_paths, steps + 1))
    scale = math.sqrt(dt)
    for path in range(n_paths):
        rng = keyed_rng(seed, replica, path)
        forward = rng.normal(0.0, scale, size=steps - anchor_index)
        backward = rng.normal(0.0, scale, size=anchor_index)
        values[path, anchor_index + 1 :] = np.cumsum(forward)
        values[path, :anchor_index] = -np.cumsum(backward)[::-1]

    return BrownianLattice(
        n_paths=n_paths,
        t_min=t_min,
        t_max=t_max,
        dt=dt,
        values=values,
        seed=seed,
        anchor_index=anchor_index,
        replica=replica,
    )


def time_index(lat: BrownianLattice, t: float) -> int:
    return _grid_index(lat.t_min, lat.dt, lat.grid_size, t)


def increment(lat: BrownianLattice, path: int, s: float, t: float) -> float:
    """Return the increment B_t - B_s of one path between two grid times."""
    if not 0 <= path < lat.n_paths:
        raise GridError(f"Path index {path} is out of range for a lattice of {lat.n_paths} paths.")
    return float(lat.values[path, time_index(lat, t)] - lat.values[path, time_index(lat, s)])


def negate_lattice(lat: BrownianLattice) -> BrownianLattice:
    return BrownianLattice(
        n_paths=lat.n_paths,
        t_min=lat.t_min,
        t_max=lat.t_max,
        dt=lat.dt,
        values=-lat.values,
        seed=lat.seed,
        anchor_index=lat.anchor_index,
        replica=lat.replica,
    )


def coarsen_lattice(lat: BrownianLattice, factor: int) -> BrownianLattice:
    """Keep every ``factor``-th grid point of the same paths."""
    if factor < 1 or lat.grid_size % factor != 0:
        raise GridError(f"Coarsening factor {factor} must be a positive divisor of the grid size {lat.grid_size}.")
    if lat.anchor_index % factor != 0:
        raise GridError(f"The anchor index {lat.anchor_index} is not a point of the grid coarsened by {factor}.")
    return BrownianLattice(
        n_paths=lat.n_paths,
        t_min=lat.t_min,
        t_max=lat.t_max,
        dt=lat.dt * factor,
        values=np.ascontiguousarray(lat.values[:, ::factor]),
        seed=lat.seed,
        anchor_index=lat.anchor_index // factor,
        replica=lat.replica,
    )


def save_lattice(lat: BrownianLattice, file_path: PathType) -> None:
    """
    Write a lattice as a little-endian header (n_paths, t_min, t_max, dt, seed) followed by row-major 64-bit floats.

    The replica index is not stored; the anchor is recovered on load as the all-zero column.
    """
    header = np.array([(lat.n_paths, lat.t_min, lat.t_max, lat.dt, lat.seed)], dtype=LATTICE_HEADER_DTYPE)
    with open(file=file_path, mode="wb") as file:
        file.write(header.tobytes())
        file.write(np.ascontiguousarray(lat.values, dtype="<f8").tobytes(order="C"))


def load_lattice(file_path: PathType) -> BrownianLattice:
    data = Path(file_path).read_bytes()
    header_size = LATTICE_HEADER_DTYPE.itemsize
    if len(data) < header_size:
        raise GridError(f"'{file_path}' is too short to hold a lattice header.")
    header = np.frombuffer(data[:header_size], dtype=LATTICE_HEADER_DTYPE)[0]
    n_paths = int(header["n_paths"])
    values = np.frombuffer(data[header_size:], dtype="<f8").astype(np.float64)
    if n_paths < 1 or values.size % n_paths != 0:
        raise GridError(f"'{file_path}' holds {values.size} values, which do not split into {n_paths} paths.")
    values = values.reshape(n_paths, -1)

    zero_columns = np.flatnonzero(np.all(values == 0.0, axis=0))
    if zero_columns.size == 0:
        raise GridError(f"'{file_path}' has no grid point where every path vanishes.")
    return BrownianLattice(
        n_paths=n_paths,
        t_min=float(header["t_min"]),
        t_max=float(header["t_max"]),
        dt=float(header["dt"]),
        values=values,
        seed=int(header["seed"]),
        anchor_index=int(zero_columns[0]),
    )


def summarize_replicas(values: np.ndarray, n: int, dt: float, seed: int, quantity: str) -> EstimateRecord:
    """Mean and standard error (sample deviation over sqrt(replicas)) of per-replica estimates."""
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or values.size < 2:
        raise ValueError(f"At least two replicas are needed for a standard error, received {values.size}.")
    stderr = 0.0 if np.ptp(values) == 0 else float(np.std(values, ddof=1) / math.sqrt(values.size))
    return EstimateRecord(
        mean=float(np.mean(values)),
        stderr=stderr,
        replicas=int(values.size),
        n=n,
        dt=dt,
        seed=seed,
        quantity=quantity,
    )
