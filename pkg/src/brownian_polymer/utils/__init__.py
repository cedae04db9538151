from ._utils import (
    calculate_number_of_cpu,
    combined_stderr,
    get_package_version,
    get_worker_count,
    is_ascending_series,
    mean_and_stderr,
    parse_range,
    strtobool,
    within_stderr,
)

__all__ = [
    "calculate_number_of_cpu",
    "combined_stderr",
    "get_package_version",
    "get_worker_count",
    "is_ascending_series",
    "mean_and_stderr",
    "parse_range",
    "strtobool",
    "within_stderr",
]
