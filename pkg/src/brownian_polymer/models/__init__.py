from ._environment import (
    coarsen_lattice,
    grid_steps,
    increment,
    keyed_rng,
    load_lattice,
    negate_lattice,
    sample_lattice,
    save_lattice,
    summarize_replicas,
    time_index,
)
from ._freeenergy import (
    conjugate_f_minus_one,
    conjugate_f_minus_one_point,
    free_energy,
    free_energy_closed_form,
    free_energy_derivative,
    gamma_continuity_bound,
    gamma_shape,
    rate_lambda,
    rate_lambda_derivative,
    rate_lambda_m,
    rate_lambda_star,
    small_beta_series,
)
from ._polymer import (
    chernoff_tail_check,
    default_dt,
    default_kac_window,
    discrete_simplex_log_volume,
    estimate_free_energy,
    gamma_n_dp,
    grand_partition,
    kac_concentration,
    log_partition_dp,
    log_poisson_moment_dp,
    log_start_profile,
    lpp_dp,
    lpp_limit_estimate,
    lpp_min_dp,
    moment_identity_check,
    transfer_profiles,
)
from ._queue import (
    dag_identity_check,
    default_horizon,
    departure_brownian_check,
    dufresne_target,
    estimate_queue,
    horizon_tail_fraction,
    queue_lattice,
    queue_profiles,
    resolve_horizon,
    sample_r0,
    tandem,
    tandem_stage_matrix,
    warn_on_short_horizon,
)
from ._rmt import (
    gershgorin_bounds,
    gue_vs_lpp,
    largest_eigenvalue,
    sample_gue_tridiag,
    sturm_count,
    to_dense,
)
from ._specialfn import (
    EULER_GAMMA,
    digamma,
    digamma_minus_log,
    digamma_series,
    evaluate_polygamma,
    inv_trigamma,
    loggamma_series,
    tetragamma,
    tetragamma_series,
    trigamma,
    trigamma_series,
    x_trigamma_excess,
    zeta_minus_one,
)
from ._types import (
    BrownianLattice,
    ChernoffPoint,
    DepartureReport,
    EstimateRecord,
    FreeEnergyBranch,
    FreeEnergyPoint,
    GueComparison,
    KacDiagnostic,
    MomentIdentityResult,
    PolygammaMethod,
    PolygammaResult,
    QueueSample,
    RatePoint,
    StatisticalVerdict,
    TandemResult,
    TransferMode,
    TransferProfile,
    TridiagonalMatrix,
)

__all__ = [
    # specialfn
    "EULER_GAMMA",
    "digamma",
    "digamma_minus_log",
    "digamma_series",
    "evaluate_polygamma",
    "inv_trigamma",
    "loggamma_series",
    "tetragamma",
    "tetragamma_series",
    "trigamma",
    "trigamma_series",
    "x_trigamma_excess",
    "zeta_minus_one",
    # freeenergy
    "conjugate_f_minus_one",
    "conjugate_f_minus_one_point",
    "free_energy",
    "free_energy_closed_form",
    "free_energy_derivative",
    "gamma_continuity_bound",
    "gamma_shape",
    "rate_lambda",
    "rate_lambda_derivative",
    "rate_lambda_m",
    "rate_lambda_star",
    "small_beta_series",
    # environment
    "coarsen_lattice",
    "grid_steps",
    "increment",
    "keyed_rng",
    "load_lattice",
    "negate_lattice",
    "sample_lattice",
    "save_lattice",
    "summarize_replicas",
    "time_index",
    # polymer
    "chernoff_tail_check",
    "default_dt",
    "default_kac_window",
    "discrete_simplex_log_volume",
    "estimate_free_energy",
    "gamma_n_dp",
    "grand_partition",
    "kac_concentration",
    "log_partition_dp",
    "log_poisson_moment_dp",
    "log_start_profile",
    "lpp_dp",
    "lpp_limit_estimate",
    "lpp_min_dp",
    "moment_identity_check",
    "transfer_profiles",
    # queue
    "dag_identity_check",
    "default_horizon",
    "departure_brownian_check",
    "dufresne_target",
    "estimate_queue",
    "horizon_tail_fraction",
    "queue_lattice",
    "queue_profiles",
    "resolve_horizon",
    "sample_r0",
    "tandem",
    "tandem_stage_matrix",
    "warn_on_short_horizon",
    # rmt
    "gershgorin_bounds",
    "gue_vs_lpp",
    "largest_eigenvalue",
    "sample_gue_tridiag",
    "sturm_count",
    "to_dense",
    # types
    "BrownianLattice",
    "ChernoffPoint",
    "DepartureReport",
    "EstimateRecord",
    "FreeEnergyBranch",
    "FreeEnergyPoint",
    "GueComparison",
    "KacDiagnostic",
    "MomentIdentityResult",
    "PolygammaMethod",
    "PolygammaResult",
    "QueueSample",
    "RatePoint",
    "StatisticalVerdict",
    "TandemResult",
    "TransferMode",
    "TransferProfile",
    "TridiagonalMatrix",
]
