"""Commonly reused logic for parsing parameters and summarizing replicas; must not depend on the models."""

import math
import os
from importlib.metadata import version as importlib_version
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike
from packaging import version

THREADS_ENVIRONMENT_VARIABLE = "POLYMER_THREADS"
RANGE_ROUNDING_DECIMALS = 12


def is_ascending_series(series: ArrayLike, strict: bool = False) -> bool:
    """General purpose function for determining if a series is monotonic increasing, ignoring NaN values."""
    data = np.asarray(series, dtype=float)
    differences = np.diff(data[~np.isnan(data)])

    return bool(np.all(differences > 0)) if strict else bool(np.all(differences >= 0))


def parse_range(text: str) -> tuple[float, ...]:
    """
    Expand a scalar, an inclusive ``start:stop:step`` triple, or a comma-separated list into its values.

    Examples: ``"1"`` gives (1.0,), ``"0:1:0.5"`` gives (0.0, 0.5, 1.0), and ``"0.5,1,2"`` gives (0.5, 1.0, 2.0).
    """
    text = str(text).strip()
    if "," in text:
        return tuple(float(item) for item in text.split(",") if item.strip())
    if ":" not in text:
        return (float(text),)

    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"A range must have the form start:stop:step, received '{text}'.")
    start, stop, step = (float(part) for part in parts)
    if not step > 0:
        raise ValueError(f"The step of range '{text}' must be greater than zero.")
    if stop < start:
        raise ValueError(f"The stop of range '{text}' must not be less than its start.")
    count = math.floor((stop - start) / step + 1e-9) + 1
    return tuple(round(start + step * index, RANGE_ROUNDING_DECIMALS) for index in range(count))


def mean_and_stderr(values: ArrayLike) -> tuple[float, float]:
    """Sample mean and its standard error (ddof=1); the error is zero for a constant or single-valued sample."""
    data = np.asarray(values, dtype=float)
    if data.size < 2 or np.ptp(data) == 0:
        return float(np.mean(data)), 0.0
    return float(np.mean(data)), float(np.std(data, ddof=1) / math.sqrt(data.size))


def combined_stderr(*stderrs: float) -> float:
    return math.sqrt(sum(stderr * stderr for stderr in stderrs))


def within_stderr(estimate: float, target: float, stderr: float, n_sigma: float = 3.0, slack: float = 0.0) -> bool:
    """True when |estimate - target| <= n_sigma * stderr + slack."""
    return abs(estimate - target) <= n_sigma * stderr + slack


def calculate_number_of_cpu(requested_cpu: int = 1) -> int:
    """
    Turn a requested worker count into a positive one.

    Positive requests are taken as given, 0 means every CPU, and a negative request leaves that many CPUs idle.
    Requests beyond the machine in either direction raise ValueError.
    """
    total_cpu = os.cpu_count() or 1
    if requested_cpu > total_cpu:
        raise ValueError(f"Requested more CPUs ({requested_cpu}) than are available ({total_cpu})!")
    if requested_cpu <= -total_cpu:
        raise ValueError(f"Requested fewer CPUs ({requested_cpu}) than are available ({total_cpu})!")
    return requested_cpu if requested_cpu > 0 else total_cpu + requested_cpu


def get_worker_count(n_jobs: Optional[int] = None) -> int:
    """
    Resolve the worker count for replica-parallel work.

    The POLYMER_THREADS environment variable is a cap on parallelism, read with the same conventions as ``n_jobs``
    (0 means every CPU). Without an explicit ``n_jobs`` the cap itself is used, and a single worker when the variable
    is unset; an explicit ``n_jobs`` is bounded by the cap. Requests above the number of available CPUs are capped.
    """
    total_cpu = os.cpu_count() or 1
    cap_text = os.environ.get(THREADS_ENVIRONMENT_VARIABLE, "").strip()
    cap = calculate_number_of_cpu(requested_cpu=min(int(cap_text), total_cpu)) if cap_text else None

    if n_jobs is None:
        return cap if cap is not None else 1
    workers = calculate_number_of_cpu(requested_cpu=min(n_jobs, total_cpu))
    return workers if cap is None else min(workers, cap)


def get_package_version(name: str) -> version.Version:
    """Installed version of distribution ``name``, read from its metadata, as a comparable packaging Version."""
    return version.parse(importlib_version(name))


_TRUE_STRINGS = frozenset(("y", "yes", "t", "true", "on", "1"))
_FALSE_STRINGS = frozenset(("n", "no", "f", "false", "off", "0"))


def strtobool(val: str) -> bool:
    """Read an environment-style flag such as 'yes', 'off' or '1', ignoring case."""
    if not isinstance(val, str):
        raise TypeError(f"strtobool expects a str, received {type(val).__name__} {val!r}.")
    if val.lower() in _TRUE_STRINGS:
        return True
    if val.lower() in _FALSE_STRINGS:
        return False
    raise ValueError(f"'{val}' is not a recognized truth value.")
