import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spinorlab.clifford import gamma_set, pauli
from spinorlab.linalg import (expm, mat_max, polar_unitary, proportional,
                              svd_nullspace, unitarity_defect)


def series_expm(m, terms=30):
    """Independent oracle: direct Taylor summation."""
    out = np.eye(m.shape[0], dtype=complex)
    acc = np.eye(m.shape[0], dtype=complex)
    for n in range(1, terms + 1):
        acc = acc @ m / n
        out = out + acc
    return out


def random_complex(rng, shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def test_expm_zero_is_identity():
    assert mat_max(expm(np.zeros((2, 2))) - np.eye(2)) == 0.0


@pytest.mark.parametrize("e3", [1.0, -1.0])
def test_expm_quarter_pi_gamma3(e3):
    # exp((pi/4) gamma3 e3) = (1 + gamma3 e3)/sqrt(2)
    g3 = gamma_set("rep26").gamma(3)
    got = expm(0.25 * np.pi * e3 * g3)
    want = (np.eye(4) + e3 * g3) / np.sqrt(2.0)
    assert mat_max(got - want) < 1e-14


def test_expm_against_series_oracle():
    theta = 0.7
    m = 1j * theta * pauli(3)
    got = expm(m)
    assert mat_max(got - series_expm(m)) < 1e-13
    frozen = np.diag([0.7648421872844885 + 0.6442176872376911j,
                      0.7648421872844885 - 0.6442176872376911j])
    assert mat_max(got - frozen) < 1e-13


def test_expm_rejects_nonfinite():
    bad = np.array([[np.nan, 0], [0, 1]], dtype=complex)
    with pytest.raises(ValueError, match="non-finite"):
        expm(bad)


def test_nullspace_rank_deficient_diag():
    res = svd_nullspace(np.diag([1.0, 0.0]), 1e-10)
    assert not res.rank_zero
    assert len(res.vectors) == 1
    assert proportional(res.vectors[0].reshape(1, 2), np.array([[0.0, 1.0]]))


def test_nullspace_full_rank_unitary_empty():
    rng = np.random.default_rng(7)
    q, _ = np.linalg.qr(random_complex(rng, (4, 4)))
    res = svd_nullspace(q, 1e-10)
    assert res.vectors == []


def test_nullspace_zero_matrix_flagged():
    res = svd_nullspace(np.zeros((3, 3)), 1e-10)
    assert res.rank_zero
    assert len(res.vectors) == 3


def test_nullspace_rejects_bad_tol():
    with pytest.raises(ValueError):
        svd_nullspace(np.eye(2), 0.0)


def test_polar_scaling_removal():
    assert mat_max(polar_unitary(2.0 * np.eye(3)) - np.eye(3)) < 1e-14
    assert mat_max(polar_unitary(3.0 * pauli(1)) - pauli(1)) < 1e-14


def test_polar_complex_phase():
    got = polar_unitary((1 + 1j) * pauli(2))
    want = (1 + 1j) / np.sqrt(2.0) * pauli(2)
    assert mat_max(got - want) < 1e-14
    # SVD-based oracle: U = W Vh from the SVD of the input
    w, _, vh = np.linalg.svd((1 + 1j) * pauli(2))
    assert mat_max(got - w @ vh) < 1e-14


def test_polar_rejects_singular():
    with pytest.raises(ValueError, match="no unitary"):
        polar_unitary(np.diag([1.0, 0.0]))


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 10_000), st.integers(2, 5))
def test_expm_inverse_identity(seed, dim):
    rng = np.random.default_rng(seed)
    m = random_complex(rng, (dim, dim))
    m *= 5.0 / max(np.linalg.norm(m, 2), 1e-12)
    assert mat_max(expm(m) @ expm(-m) - np.eye(dim)) < 1e-11


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 10_000), st.integers(2, 5))
def test_expm_antihermitian_gives_unitary(seed, dim):
    rng = np.random.default_rng(seed)
    m = random_complex(rng, (dim, dim))
    m = 0.5 * (m - m.conj().T)
    m *= 5.0 / max(np.linalg.norm(m, 2), 1e-12)
    assert unitarity_defect(expm(m)) < 1e-11


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 10_000), st.integers(2, 4), st.integers(1, 3))
def test_nullspace_vectors_annihilate(seed, dim, rank):
    rank = min(rank, dim - 1)
    rng = np.random.default_rng(seed)
    a = random_complex(rng, (dim, rank))
    b = random_complex(rng, (rank, dim))
    m = a @ b                                   # rank-deficient by construction
    smax = np.linalg.svd(m, compute_uv=False)[0]
    tol = 1e-8
    res = svd_nullspace(m, tol)
    assert len(res.vectors) >= dim - rank
    for v in res.vectors:
        assert np.linalg.norm(m @ v) <= 10 * tol * smax
