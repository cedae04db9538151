from ._environment import (
    check_brownian_statistics,
    check_increment_algebra,
    check_lattice_anchor,
    check_lattice_determinism,
    check_lattice_dump,
)
from ._freeenergy import (
    check_asymptotic_slope,
    check_branch_continuity,
    check_conjugate_f_minus_one,
    check_duality,
    check_excess_slope,
    check_fenchel_inequality,
    check_free_energy_at_zero,
    check_free_energy_convexity,
    check_free_energy_flat_at_zero,
    check_limit_shape_closed_value,
    check_limit_shape_concavity,
    check_limit_shape_continuity,
    check_rate_lambda,
    check_rate_lambda_m,
    check_rate_lambda_star,
)
from ._polymer import (
    check_beta_zero_volume,
    check_chernoff_bound,
    check_embedding_inequality,
    check_free_energy_simulation,
    check_free_energy_trend,
    check_kac_concentration,
    check_kac_mass_trend,
    check_limit_shape_brute_force,
    check_lpp_brute_force,
    check_lpp_lower_bound,
    check_lpp_simulation,
    check_lpp_trend,
    check_min_max_symmetry,
    check_moment_identity,
    check_partition_brute_force,
    check_partition_single_path,
    check_poisson_moment_at_zero,
    check_shift_invariance,
    check_start_profile,
    check_zero_temperature_bridge,
)
from ._queue import (
    check_departure_process,
    check_dufresne_gamma_oracle,
    check_dufresne_moments,
    check_horizon_robustness,
    check_horizon_warning,
    check_monotone_in_service_rate,
    check_tandem_base_case,
    check_tandem_digamma_limit,
    check_tandem_stage_independence,
    check_telescoping_identity,
)
from ._rmt import (
    check_gue_dense_oracle,
    check_gue_edge_scaling,
    check_gue_matches_last_passage,
    check_gue_single_entry,
    check_sturm_bisection,
    check_tridiagonal_small_cases,
)
from ._specialfn import (
    check_functional_equations,
    check_inverse_trigamma_round_trip,
    check_polygamma_closed_values,
    check_polygamma_monotonicity,
    check_series_agreement,
)

__all__ = [
    "check_brownian_statistics",
    "check_increment_algebra",
    "check_lattice_anchor",
    "check_lattice_determinism",
    "check_lattice_dump",
    "check_asymptotic_slope",
    "check_branch_continuity",
    "check_conjugate_f_minus_one",
    "check_duality",
    "check_excess_slope",
    "check_fenchel_inequality",
    "check_free_energy_at_zero",
    "check_free_energy_convexity",
    "check_free_energy_flat_at_zero",
    "check_limit_shape_closed_value",
    "check_limit_shape_concavity",
    "check_limit_shape_continuity",
    "check_rate_lambda",
    "check_rate_lambda_m",
    "check_rate_lambda_star",
    "check_beta_zero_volume",
    "check_chernoff_bound",
    "check_embedding_inequality",
    "check_free_energy_simulation",
    "check_free_energy_trend",
    "check_kac_concentration",
    "check_kac_mass_trend",
    "check_limit_shape_brute_force",
    "check_lpp_brute_force",
    "check_lpp_lower_bound",
    "check_lpp_simulation",
    "check_lpp_trend",
    "check_min_max_symmetry",
    "check_moment_identity",
    "check_partition_brute_force",
    "check_partition_single_path",
    "check_poisson_moment_at_zero",
    "check_shift_invariance",
    "check_start_profile",
    "check_zero_temperature_bridge",
    "check_departure_process",
    "check_dufresne_gamma_oracle",
    "check_dufresne_moments",
    "check_horizon_robustness",
    "check_horizon_warning",
    "check_monotone_in_service_rate",
    "check_tandem_base_case",
    "check_tandem_digamma_limit",
    "check_tandem_stage_independence",
    "check_telescoping_identity",
    "check_gue_dense_oracle",
    "check_gue_edge_scaling",
    "check_gue_matches_last_passage",
    "check_gue_single_entry",
    "check_sturm_bisection",
    "check_tridiagonal_small_cases",
    "check_functional_equations",
    "check_inverse_trigamma_round_trip",
    "check_polygamma_closed_values",
    "check_polygamma_monotonicity",
    "check_series_agreement",
]
