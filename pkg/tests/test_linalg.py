import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbitframes import linalg

from conftest import rand_complex


def test_svd_identity():
    res = linalg.svd(np.eye(5))
    np.testing.assert_allclose(res.singular_values, np.ones(5))


def test_svd_diagonal():
    res = linalg.svd(np.diag([3.0, 0.0]))
    np.testing.assert_allclose(res.singular_values, [3.0, 0.0])


def test_svd_reassembly_and_isometry():
    rng = np.random.default_rng(3)
    m = rand_complex(rng, 6, 4)
    res = linalg.svd(m)
    rebuilt = (res.left_vectors * res.singular_values) @ res.right_vectors.conj().T
    assert np.linalg.norm(rebuilt - m) <= 1e-10 * np.linalg.norm(m)
    k = res.singular_values.size
    assert np.linalg.norm(res.left_vectors.conj().T @ res.left_vectors - np.eye(k)) <= 1e-10
    assert np.linalg.norm(res.right_vectors.conj().T @ res.right_vectors - np.eye(k)) <= 1e-10


def test_svd_rejects_nonfinite():
    with pytest.raises(ValueError, match="non-finite"):
        linalg.svd(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_numerical_rank_zero_matrix():
    s = linalg.svd(np.zeros((4, 3))).singular_values
    assert linalg.numerical_rank(s, 4, 3) == 0


def test_numerical_rank_identity():
    s = linalg.svd(np.eye(6)).singular_values
    assert linalg.numerical_rank(s, 6, 6) == 6


def test_numerical_rank_outer_product():
    rng = np.random.default_rng(0)
    u = rand_complex(rng, 5)
    v = rand_complex(rng, 7)
    assert linalg.matrix_rank(np.outer(u, v.conj())) == 1


def test_pseudoinverse_invertible_is_inverse():
    rng = np.random.default_rng(1)
    m = rand_complex(rng, 4, 4) + 4 * np.eye(4)
    np.testing.assert_allclose(linalg.pseudoinverse(m), np.linalg.inv(m), atol=1e-10)


def test_pseudoinverse_zero():
    out = linalg.pseudoinverse(np.zeros((3, 5)))
    assert out.shape == (5, 3)
    assert not out.any()


def test_pseudoinverse_averaging_column():
    np.testing.assert_allclose(
        linalg.pseudoinverse([[1.0], [1.0]]), [[0.5, 0.5]], atol=1e-14
    )


@given(st.integers(1, 9), st.integers(1, 9), st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_pseudoinverse_penrose_conditions(rows, cols, seed):
    rng = np.random.default_rng(seed)
    m = rand_complex(rng, rows, cols)
    p = linalg.pseudoinverse(m)
    scale = max(1.0, np.linalg.norm(m))
    assert np.linalg.norm(m @ p @ m - m) <= 1e-9 * scale
    assert np.linalg.norm(p @ m @ p - p) <= 1e-9 * scale
    assert np.linalg.norm((m @ p).conj().T - m @ p) <= 1e-9 * scale
    assert np.linalg.norm((p @ m).conj().T - p @ m) <= 1e-9 * scale


def test_pseudoinverse_involution_on_full_rank():
    rng = np.random.default_rng(8)
    m = rand_complex(rng, 6, 4)
    np.testing.assert_allclose(
        linalg.pseudoinverse(linalg.pseudoinverse(m)), m, atol=1e-8
    )


def test_least_squares_identity():
    y = np.array([1.0, 2.0, 3.0], dtype=complex)
    np.testing.assert_allclose(linalg.least_squares_solve(np.eye(3), y), y)


def test_least_squares_consistent_overdetermined():
    rng = np.random.default_rng(4)
    m = rand_complex(rng, 8, 3)
    x0 = rand_complex(rng, 3)
    x = linalg.least_squares_solve(m, m @ x0)
    assert np.linalg.norm(m @ x - m @ x0) <= 1e-10


def test_least_squares_zero_matrix_min_norm():
    x = linalg.least_squares_solve(np.zeros((4, 3)), np.ones(4))
    np.testing.assert_allclose(x, np.zeros(3))


def test_least_squares_shape_mismatch():
    with pytest.raises(ValueError, match="rows"):
        linalg.least_squares_solve(np.eye(3), np.ones(4))


def test_propagator_t_zero_is_identity():
    rng = np.random.default_rng(2)
    z = rand_complex(rng, 5, 5)
    h = (z + z.conj().T) / 2
    np.testing.assert_allclose(linalg.hermitian_propagator(h, 0.0), np.eye(5), atol=1e-12)


def test_propagator_diagonal_phases():
    out = linalg.hermitian_propagator(np.diag([1.0, 2.0]), np.pi)
    np.testing.assert_allclose(out, np.diag([-1.0, 1.0]), atol=1e-12)


@given(st.integers(0, 10**6), st.floats(-3, 3), st.floats(-3, 3))
@settings(max_examples=25, deadline=None)
def test_propagator_group_property(seed, t, s):
    rng = np.random.default_rng(seed)
    z = rand_complex(rng, 4, 4)
    h = (z + z.conj().T) / 2
    u_t = linalg.hermitian_propagator(h, t)
    u_s = linalg.hermitian_propagator(h, s)
    u_ts = linalg.hermitian_propagator(h, t + s)
    assert np.linalg.norm(u_ts - u_t @ u_s) <= 1e-10 * max(1.0, np.linalg.norm(h))


def test_propagator_rejects_non_hermitian():
    with pytest.raises(ValueError, match="Hermitian"):
        linalg.hermitian_propagator(np.array([[0.0, 1.0], [0.0, 0.0]]), 1.0)


@given(st.integers(1, 64), st.integers(1, 64), st.integers(0, 10**6))
@settings(max_examples=15, deadline=None)
def test_contracts_hold_up_to_64(rows, cols, seed):
    rng = np.random.default_rng(seed)
    m = rand_complex(rng, rows, cols)
    res = linalg.svd(m)
    rebuilt = (res.left_vectors * res.singular_values) @ res.right_vectors.conj().T
    assert np.linalg.norm(rebuilt - m) <= 1e-10 * max(1.0, np.linalg.norm(m))
    assert linalg.numerical_rank(res.singular_values, rows, cols) == min(rows, cols)
