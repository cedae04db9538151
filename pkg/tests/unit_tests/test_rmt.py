import numpy as np
import pytest

from brownian_polymer.models import (
    TridiagonalMatrix,
    gershgorin_bounds,
    gue_vs_lpp,
    largest_eigenvalue,
    sample_gue_tridiag,
    sturm_count,
    to_dense,
)


def test_single_entry():
    assert largest_eigenvalue(TridiagonalMatrix(diag=np.array([0.7]), offdiag=np.array([]))) == 0.7


def test_two_by_two():
    matrix = TridiagonalMatrix(diag=np.zeros(2), offdiag=np.array([1.3]))
    assert largest_eigenvalue(matrix) == pytest.approx(1.3, abs=1e-9)
    assert gershgorin_bounds(matrix) == (-1.3, 1.3)


def test_against_dense_eigenvalues():
    matrix = sample_gue_tridiag(10, seed=5)
    eigenvalues = np.linalg.eigvalsh(to_dense(matrix))
    assert largest_eigenvalue(matrix) == pytest.approx(eigenvalues[-1], abs=1e-8)

    top = eigenvalues[-1]
    assert sturm_count(matrix, top - 1e-8) == 9
    assert sturm_count(matrix, top + 1e-8) == 10
    assert sturm_count(matrix, eigenvalues[0] - 1e-8) == 0


def test_eigenvalues_inside_gershgorin_interval():
    matrix = sample_gue_tridiag(20, seed=1)
    lower, upper = gershgorin_bounds(matrix)
    eigenvalues = np.linalg.eigvalsh(to_dense(matrix))
    assert lower <= eigenvalues[0] and eigenvalues[-1] <= upper


def test_sample_gue_tridiag_layout():
    matrix = sample_gue_tridiag(6, seed=2)
    assert matrix.size == 6
    assert matrix.offdiag.shape == (5,)
    assert np.all(matrix.offdiag >= 0)
    again = sample_gue_tridiag(6, seed=2)
    np.testing.assert_array_equal(again.diag, matrix.diag)
    assert not np.array_equal(sample_gue_tridiag(6, seed=2, replica=1).diag, matrix.diag)


def test_sample_gue_tridiag_rejects_empty():
    with pytest.raises(ValueError):
        sample_gue_tridiag(0)


@pytest.mark.parametrize(
    "diag,offdiag",
    [(np.array([]), np.array([])), (np.zeros(3), np.zeros(3)), (np.zeros(2), np.array([-1.0]))],
)
def test_tridiagonal_matrix_validation(diag, offdiag):
    with pytest.raises(ValueError):
        TridiagonalMatrix(diag=diag, offdiag=offdiag)


def test_gue_vs_lpp_at_one_path():
    comparison = gue_vs_lpp(1, replicas=20, dt=1.0 / 64, seed=3, n_jobs=1)
    # one path: the eigenvalue and B(1) share no randomness but have the same law
    assert comparison.allowance == 0.0
    assert comparison.gue_stderr > 0.0 and comparison.lpp_stderr > 0.0
    with pytest.raises(ValueError):
        gue_vs_lpp(1, replicas=1)
