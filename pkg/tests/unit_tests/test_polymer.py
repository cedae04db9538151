import math

import numpy as np
import pytest
from scipy.special import logsumexp

from brownian_polymer import DomainError, GridError, InsufficientPathsError, WindowMissError
from brownian_polymer.models import (
    TransferMode,
    chernoff_tail_check,
    default_dt,
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
    negate_lattice,
    sample_lattice,
    transfer_profiles,
    trigamma,
)
from brownian_polymer.models._polymer import KAC_WINDOW_HALF_WIDTH
from brownian_polymer.testing import brute_force_log_partition, brute_force_lpp


@pytest.fixture(scope="module")
def lattice():
    return sample_lattice(n_paths=3, t_min=0.0, t_max=3.0, dt=0.1, seed=11)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("beta", [0.0, 0.7, 3.0])
def test_log_partition_against_brute_force(lattice, n, beta):
    expected = brute_force_log_partition(lattice, beta, n)
    assert log_partition_dp(lattice, beta, n) == pytest.approx(expected, rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_log_partition_at_zero_beta_is_simplex_volume(lattice, n):
    steps = int(round(n / lattice.dt))
    assert log_partition_dp(lattice, 0.0, n) == pytest.approx(
        discrete_simplex_log_volume(n, steps, lattice.dt), rel=1e-12, abs=1e-12
    )


def test_discrete_simplex_log_volume():
    assert discrete_simplex_log_volume(3, 30, 0.1) == pytest.approx(math.log(435) + 2.0 * math.log(0.1), rel=1e-12)
    assert discrete_simplex_log_volume(1, 5, 0.1) == 0.0
    assert discrete_simplex_log_volume(4, 2, 0.1) == -math.inf
    with pytest.raises(ValueError):
        discrete_simplex_log_volume(0, 5, 0.1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_lpp_against_brute_force(lattice, n):
    assert lpp_dp(lattice, n, float(n)) == pytest.approx(brute_force_lpp(lattice, n, float(n)), abs=1e-12)


def test_lpp_strict_does_not_exceed_non_strict(lattice):
    assert lpp_dp(lattice, 3, 3.0, strict=True) <= lpp_dp(lattice, 3, 3.0) + 1e-12


def test_lpp_min_is_negated_max(lattice):
    assert lpp_min_dp(lattice, 3, 3.0) == pytest.approx(-lpp_dp(negate_lattice(lattice), 3, 3.0), abs=1e-12)
    assert lpp_min_dp(lattice, 3, 3.0) <= lpp_dp(lattice, 3, 3.0)


def test_partition_is_sandwiched_by_strict_lpp(lattice):
    beta, n = 5.0, 3
    strict = lpp_dp(lattice, n, float(n), strict=True)
    log_z = log_partition_dp(lattice, beta, n)
    lower = beta * strict + (n - 1) * math.log(lattice.dt)
    upper = beta * strict + discrete_simplex_log_volume(n, 30, lattice.dt)
    assert lower - 1e-9 <= log_z <= upper + 1e-9


def test_transfer_profiles(lattice):
    profiles = list(transfer_profiles(lattice, 0.7, 3))
    assert [profile.level for profile in profiles] == [1, 2, 3]
    assert profiles[-1].mode is TransferMode.LOG_SUM_EXP
    assert profiles[-1].log_values[-1] == pytest.approx(log_partition_dp(lattice, 0.7, 3), rel=1e-12)

    max_plus = list(transfer_profiles(lattice, 0.7, 3, mode=TransferMode.MAX_PLUS))
    assert max_plus[-1].log_values[-1] == pytest.approx(lpp_dp(lattice, 3, 3.0), abs=1e-12)


@pytest.mark.parametrize("start", [0, 5, 12])
def test_log_start_profile_matches_forward_recursion(start):
    lat = sample_lattice(n_paths=3, t_min=0.0, t_max=2.0, dt=0.1, seed=4)
    profile = log_start_profile(lat.values, lat.dt)
    expected = brute_force_log_partition(lat, 1.0, 3, t_start=start * lat.dt, t_end=2.0)
    assert profile[start] == pytest.approx(expected, rel=1e-10, abs=1e-10)
    assert profile[-1] == -math.inf


def test_gamma_n_requires_negative_x():
    lat = sample_lattice(n_paths=2, t_min=-2.0, t_max=0.0, dt=0.1, seed=1, anchor_time=0.0)
    assert math.isfinite(gamma_n_dp(lat, -1.0, 2))
    with pytest.raises(DomainError):
        gamma_n_dp(lat, 0.5, 2)


def test_estimator_errors(lattice):
    with pytest.raises(InsufficientPathsError):
        log_partition_dp(sample_lattice(n_paths=1, t_min=0.0, t_max=2.0, dt=0.1, seed=0), 1.0, 2)
    with pytest.raises(GridError):
        lpp_dp(lattice, 2, 3.5)
    with pytest.raises(ValueError):
        estimate_free_energy(1.0, 2, dt=0.1, replicas=1)
    with pytest.raises(GridError):
        estimate_free_energy(1.0, 1, dt=0.3, replicas=4)


@pytest.mark.parametrize("n", [1, 3, 64, 100, 400, 1000])
def test_default_dt(n):
    dt = default_dt(n)
    assert dt <= min(0.025, 1.0 / (4.0 * math.sqrt(n))) + 1e-15
    assert n / dt == pytest.approx(round(n / dt), abs=1e-6)


def test_default_dt_values():
    assert default_dt(64) == pytest.approx(0.025)
    assert default_dt(400) == pytest.approx(0.0125)


def test_estimate_free_energy_matches_replica_loop():
    record = estimate_free_energy(1.0, 2, dt=0.1, replicas=4, seed=3, n_jobs=1)
    values = [
        log_partition_dp(sample_lattice(n_paths=2, t_min=0.0, t_max=2.0, dt=0.1, seed=3, replica=replica), 1.0, 2) / 2
        for replica in range(4)
    ]
    assert record.mean == pytest.approx(np.mean(values), rel=1e-12)
    assert (record.replicas, record.n, record.dt, record.seed) == (4, 2, 0.1, 3)


def test_lpp_limit_estimate_is_reproducible():
    first = lpp_limit_estimate(3, dt=0.1, replicas=3, seed=5, n_jobs=1)
    second = lpp_limit_estimate(3, dt=0.1, replicas=3, seed=5, n_jobs=1)
    assert first == second


def test_moment_identity(lattice):
    result = moment_identity_check(lattice, beta=0.5, n=2, mc_samples=20_000, seed=9)
    assert abs(result.lhs - result.rhs) <= 4.0 * result.lhs_stderr + 1e-12
    with pytest.raises(ValueError):
        moment_identity_check(lattice, beta=0.5, n=1)


def test_chernoff_bound_holds_on_the_sample(lattice):
    points = chernoff_tail_check(lattice, n=3, x=0.5, thetas=[0.5, 1.0, 2.0], mc_samples=5_000, seed=2)
    assert all(point.tail_probability <= point.bound for point in points)
    with pytest.raises(DomainError):
        chernoff_tail_check(lattice, n=3, x=0.5, thetas=[0.0], mc_samples=100)


def test_log_poisson_moment_at_zero_theta():
    lat = sample_lattice(n_paths=1, t_min=0.0, t_max=10.0, dt=0.1, seed=0)
    expected = math.log(np.sum(lat.dt * np.exp(-lat.times)))
    assert log_poisson_moment_dp(lat, 0.0, 1) == pytest.approx(expected, rel=1e-12)


def test_grand_partition_rejects_bad_inputs():
    with pytest.raises(DomainError):
        grand_partition(m=0.0, n=4)
    with pytest.raises(DomainError):
        grand_partition(m=1.0, n=4, x_grid=[-1.0, 0.5, -2.0])


def _first_interior_seed(call, seeds=range(40)):
    """Seed of the first environment whose maximizer falls inside the x grid."""
    for seed in seeds:
        try:
            return seed, call(seed)
        except WindowMissError:
            continue
    pytest.fail("Every environment put the maximizer on the boundary of the x grid.")


def test_grand_partition_matches_direct_quadrature():
    m, n, dt = 1.0, 4, 0.05
    x_grid = np.linspace(-6.0, -0.05, 60)
    seed, diagnostic = _first_interior_seed(lambda seed: grand_partition(m=m, n=n, dt=dt, x_grid=x_grid, seed=seed))

    indices = np.unique(np.round(-x_grid * n / dt).astype(int))
    steps = int(indices.max())
    lat = sample_lattice(n_paths=n, t_min=-steps * dt, t_max=0.0, dt=dt, seed=seed, anchor_time=0.0)
    x = np.sort(-indices * dt / n)
    exponent = np.array([n * (m * value + gamma_n_dp(lat, value, n)) for value in x])
    widths = np.diff(x)
    weights = np.zeros_like(x)
    weights[:-1] += widths / 2.0
    weights[1:] += widths / 2.0
    log_xi = logsumexp(exponent, b=weights)
    in_window = np.abs(x + trigamma(m)) <= KAC_WINDOW_HALF_WIDTH

    assert diagnostic.log_xi == pytest.approx(log_xi / n, rel=1e-9, abs=1e-9)
    assert diagnostic.argmax_x == pytest.approx(x[np.argmax(exponent)])
    assert diagnostic.mass_window == pytest.approx(
        np.exp(logsumexp(exponent[in_window], b=weights[in_window]) - log_xi), rel=1e-9, abs=1e-12
    )


def test_grand_partition_diagnostic_bounds():
    _, diagnostic = _first_interior_seed(lambda seed: grand_partition(m=1.0, n=6, dt=0.05, seed=seed))
    assert diagnostic.argmax_x < 0
    assert 0.0 <= diagnostic.mass_window <= 1.0
    assert diagnostic.replicas == 1


def test_kac_concentration_averages_replicas():
    seed, trend = _first_interior_seed(
        lambda seed: kac_concentration(m=1.0, n_values=[6], dt=0.05, replicas=2, seed=seed, n_jobs=1)
    )
    replicas = [grand_partition(m=1.0, n=6, dt=0.05, seed=seed, replica=replica) for replica in range(2)]
    (averaged,) = trend
    assert averaged.replicas == 2
    assert averaged.argmax_x < 0
    assert 0.0 <= averaged.mass_window <= 1.0
    assert averaged.log_xi == pytest.approx(np.mean([diagnostic.log_xi for diagnostic in replicas]), rel=1e-12)
    assert averaged.mass_window == pytest.approx(np.mean([diagnostic.mass_window for diagnostic in replicas]))
