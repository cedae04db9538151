from ._testing import (
    bisection_inv_trigamma,
    brute_force_log_partition,
    brute_force_lpp,
    check_slow_tests_enabled,
    dense_gue_largest_eigenvalues,
    gamma_log_samples,
)

__all__ = [
    "check_slow_tests_enabled",
    "brute_force_log_partition",
    "brute_force_lpp",
    "bisection_inv_trigamma",
    "dense_gue_largest_eigenvalues",
    "gamma_log_samples",
]
