import numpy as np
import pytest

from orbitframes.groups import make_cyclic, make_dihedral
from orbitframes.representations import (
    RepresentationError,
    conjugate_representation,
    cyclic_shift_representation,
    from_matrices,
    haar_like_unitary,
    regular_representation,
)

from conftest import rand_complex


def test_regular_trivial_group():
    rep = regular_representation(make_cyclic(1))
    np.testing.assert_array_equal(rep.matrices[0], [[1.0]])


def test_regular_z2_swap():
    rep = regular_representation(make_cyclic(2))
    np.testing.assert_array_equal(rep.matrices[1].real, [[0, 1], [1, 0]])


def test_regular_d3_permutation_structure():
    rep = regular_representation(make_dihedral(3))
    for mat in rep.matrices:
        assert np.array_equal(np.sort(np.abs(mat), axis=0)[-1], np.ones(6))
        assert mat.sum() == 6 and np.count_nonzero(mat) == 6


def test_cyclic_shift_moves_delta():
    rep = cyclic_shift_representation(4)
    np.testing.assert_array_equal(
        rep.matrices[1] @ [1, 0, 0, 0], np.array([0, 1, 0, 0], dtype=complex)
    )


def test_cyclic_shift_full_cycle_is_identity():
    rep = cyclic_shift_representation(5)
    np.testing.assert_allclose(
        np.linalg.matrix_power(rep.matrices[1], 5), np.eye(5), atol=1e-12
    )


def test_cyclic_shift_product_wraps():
    rep = cyclic_shift_representation(6)
    np.testing.assert_allclose(rep.matrices[2] @ rep.matrices[5], rep.matrices[1])


def test_from_matrices_sign_rep():
    g = make_cyclic(2)
    rep = from_matrices(g, [np.eye(2), np.diag([1.0, -1.0])])
    assert rep.dim == 2


def test_from_matrices_rejects_nonunitary():
    g = make_cyclic(2)
    with pytest.raises(RepresentationError, match="unitary.*element 1"):
        from_matrices(g, [np.eye(2), np.diag([1.0, 2.0])])


def test_from_matrices_rejects_wrong_identity():
    g = make_cyclic(2)
    with pytest.raises(RepresentationError, match="identity"):
        from_matrices(g, [np.diag([1.0, -1.0]), np.eye(2)])


def test_from_matrices_rejects_homomorphism_failure():
    g = make_cyclic(4)
    swap = np.array([[0.0, 1.0], [1.0, 0.0]])
    with pytest.raises(RepresentationError, match="homomorphism.*pair"):
        from_matrices(g, [np.eye(2), swap, np.eye(2), np.eye(2)])


def test_from_matrices_rotation_rep_z3():
    theta = 2 * np.pi / 3
    rot = np.array(
        [[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]]
    )
    rep = from_matrices(make_cyclic(3), [np.eye(2), rot, rot @ rot])
    np.testing.assert_allclose(
        np.linalg.matrix_power(rep.matrices[1], 3), np.eye(2), atol=1e-12
    )


def test_conjugate_by_identity_is_same():
    rep = regular_representation(make_cyclic(3))
    out = conjugate_representation(rep, np.eye(3))
    np.testing.assert_allclose(out.matrices, rep.matrices)


def test_conjugate_by_permutation_valid():
    rep = regular_representation(make_cyclic(2))
    q = np.array([[0.0, 1.0], [1.0, 0.0]])
    out = conjugate_representation(rep, q)
    assert out.dim == 2


def test_conjugate_by_haar_like_d3():
    rep = regular_representation(make_dihedral(3))
    q = haar_like_unitary(6, seed=7)
    out = conjugate_representation(rep, q)  # construction re-verifies all axioms
    assert out.dim == 6


def test_conjugate_rejects_nonunitary():
    rep = regular_representation(make_cyclic(3))
    with pytest.raises(ValueError, match="unitary"):
        conjugate_representation(rep, np.diag([1.0, 2.0, 1.0]))


def test_conjugation_preserves_covariances():
    rep = regular_representation(make_dihedral(3))
    q = haar_like_unitary(6, seed=7)
    out = conjugate_representation(rep, q)
    rng = np.random.default_rng(3)
    a = rand_complex(rng, 6)
    b = rand_complex(rng, 6)
    for g in range(6):
        before = np.vdot(a, rep.matrices[g] @ b)
        after = np.vdot(q @ a, out.matrices[g] @ (q @ b))
        assert abs(before - after) <= 1e-10
