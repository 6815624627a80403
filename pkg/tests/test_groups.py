import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbitframes.groups import (
    GroupStructureError,
    Subgroup,
    build_transversal,
    canonical_ordering,
    find_complement,
    find_complements,
    from_cayley_table,
    left_cosets,
    left_translate,
    make_cyclic,
    make_dihedral,
    natural_ordering,
    subgroup_closure,
    trivial_subgroup,
    whole_group,
)

from conftest import rand_complex

# Order-5 loop: Latin square with two-sided identity 0, but (1*1)*2 != 1*(1*2).
NONASSOCIATIVE_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]

KLEIN_TABLE = [[i ^ j for j in range(4)] for i in range(4)]


def test_cyclic_trivial():
    g = make_cyclic(1)
    assert g.order == 1 and g.identity == 0


def test_cyclic_inverses_mod4():
    assert list(make_cyclic(4).inverses) == [0, 3, 2, 1]


def test_cyclic_product_mod6():
    assert make_cyclic(6).mul(2, 5) == 1


def test_cyclic_rejects_zero():
    with pytest.raises(ValueError):
        make_cyclic(0)


@given(st.integers(1, 24))
@settings(max_examples=24, deadline=None)
def test_cyclic_is_abelian_group(m):
    g = make_cyclic(m)
    assert g.is_abelian
    assert g.mul(g.identity, m - 1) == m - 1


def test_dihedral_relations_m3():
    g = make_dihedral(3)
    assert g.order == 6
    # indices: e=0, g=1, g^2=2, t=3, tg=4, tg^2=5
    assert g.mul(3, 1) == g.mul(2, 3)  # t g == g^2 t
    assert g.inverses[1] == 2          # g^{-1} == g^2


def test_dihedral_reflections_are_involutions():
    g = make_dihedral(4)
    assert g.order == 8
    for refl in range(4, 8):
        assert g.mul(refl, refl) == g.identity


def test_dihedral_rejects_small():
    with pytest.raises(ValueError):
        make_dihedral(1)


@given(st.integers(2, 12))
@settings(max_examples=11, deadline=None)
def test_dihedral_nonabelian_above_2(m):
    g = make_dihedral(m)
    assert g.order == 2 * m
    assert g.is_abelian == (m == 2)


def test_from_cayley_trivial():
    g = from_cayley_table([[0]])
    assert g.order == 1


def test_from_cayley_z2():
    g = from_cayley_table([[0, 1], [1, 0]])
    assert g.identity == 0 and g.mul(1, 1) == 0


def test_from_cayley_rejects_bad_column():
    with pytest.raises(GroupStructureError, match="column"):
        from_cayley_table([[0, 1], [0, 1]])


def test_from_cayley_rejects_bad_row():
    with pytest.raises(GroupStructureError, match="row"):
        from_cayley_table([[0, 0], [1, 1]])


def test_from_cayley_rejects_missing_identity():
    with pytest.raises(GroupStructureError, match="identity"):
        from_cayley_table([[0, 1, 2], [2, 0, 1], [1, 2, 0]])


def test_from_cayley_rejects_nonassociative_loop():
    with pytest.raises(GroupStructureError, match="associativity"):
        from_cayley_table(NONASSOCIATIVE_LOOP)


def test_construction_refused_above_cap():
    with pytest.raises(GroupStructureError, match="cap"):
        make_cyclic(257)


def test_subgroup_closure_z6():
    g = make_cyclic(6)
    assert subgroup_closure(g, [2]).elements == (0, 2, 4)


def test_subgroup_rejects_non_closed():
    g = make_cyclic(6)
    with pytest.raises(ValueError, match="closed"):
        Subgroup(g, (0, 2))


def test_left_cosets_d3_rotations(d3_bundle):
    g = d3_bundle.group
    rot = subgroup_closure(g, [1])
    assert left_cosets(g, rot) == [(0, 1, 2), (3, 4, 5)]


def test_left_cosets_whole_group():
    g = make_cyclic(4)
    assert left_cosets(g, whole_group(g)) == [(0, 1, 2, 3)]


def test_left_cosets_z6():
    g = make_cyclic(6)
    # direct enumeration: {0,3}, 1+{0,3}, 2+{0,3}
    assert left_cosets(g, subgroup_closure(g, [3])) == [(0, 3), (1, 4), (2, 5)]


@given(st.integers(2, 16), st.integers(0, 15))
@settings(max_examples=30, deadline=None)
def test_cosets_partition(m, gen):
    g = make_cyclic(m)
    cosets = left_cosets(g, subgroup_closure(g, [gen % m]))
    flat = [x for c in cosets for x in c]
    assert sorted(flat) == list(range(m))
    assert len({len(c) for c in cosets}) == 1


def test_find_complement_z6():
    g = make_cyclic(6)
    k = subgroup_closure(g, [2])
    # brute oracle: the only order-2 subgroup of Z6 is {0, 3}
    assert [x for x in range(1, 6) if (x + x) % 6 == 0] == [3]
    assert find_complement(g, k).elements == (0, 3)


def test_find_complement_d3():
    g = make_dihedral(3)
    k = subgroup_closure(g, [3])  # {e, t}
    assert find_complement(g, k).elements == (0, 1, 2)


def test_find_complement_absent_in_z4():
    g = make_cyclic(4)
    k = subgroup_closure(g, [2])
    # brute oracle: {0, 2} is the only order-2 subgroup, and it equals K
    assert [x for x in range(1, 4) if (x + x) % 4 == 0] == [2]
    assert find_complement(g, k) is None


def test_find_complements_klein_finds_both():
    g = from_cayley_table(KLEIN_TABLE)
    k = subgroup_closure(g, [1])
    found = [h.elements for h in find_complements(g, k)]
    assert found == [(0, 2), (0, 3)]


def test_find_complement_rejects_nonabelian_k():
    g = make_dihedral(3)
    with pytest.raises(ValueError, match="Abelian"):
        find_complement(g, whole_group(g))


def test_find_complement_rejects_large_groups():
    g = make_dihedral(33)
    with pytest.raises(ValueError, match="limited"):
        find_complement(g, subgroup_closure(g, [33]))


def test_build_transversal_z6():
    g = make_cyclic(6)
    t = build_transversal(g, subgroup_closure(g, [2]), subgroup_closure(g, [3]))
    assert t.taus == (0, 2, 4) and t.ell == 3


def test_build_transversal_d3():
    g = make_dihedral(3)
    t = build_transversal(g, subgroup_closure(g, [3]), subgroup_closure(g, [1]))
    assert t.taus == (0, 3) and t.ell == 2


def test_build_transversal_trivial_complement():
    g = make_cyclic(5)
    t = build_transversal(g, whole_group(g), trivial_subgroup(g))
    assert t.taus == (0, 1, 2, 3, 4)


def test_build_transversal_reports_intersection():
    g = make_cyclic(4)
    k = subgroup_closure(g, [2])
    with pytest.raises(ValueError, match="intersect.*2"):
        build_transversal(g, k, k)


def test_build_transversal_reports_size_mismatch():
    g = make_cyclic(6)
    with pytest.raises(ValueError, match="does not match"):
        build_transversal(g, subgroup_closure(g, [2]), trivial_subgroup(g))


def test_canonical_ordering_z6():
    g = make_cyclic(6)
    t = build_transversal(g, subgroup_closure(g, [2]), subgroup_closure(g, [3]))
    ordering = canonical_ordering(g, t)
    # blocks -tau_p + {0, 3} mod 6 for tau_p = 0, 2, 4
    assert list(ordering.order) == [0, 3, 4, 1, 2, 5]
    assert list(ordering.position[ordering.order]) == list(range(6))


def test_canonical_ordering_d3_blocks():
    g = make_dihedral(3)
    t = build_transversal(g, subgroup_closure(g, [3]), subgroup_closure(g, [1]))
    ordering = canonical_ordering(g, t)
    # t^{-1} {e, g, g^2} = {t, tg, tg^2}; Cayley products computed directly
    assert [g.mul(g.inv(3), h) for h in (0, 1, 2)] == [3, 4, 5]
    assert list(ordering.order) == [0, 1, 2, 3, 4, 5]


def test_canonical_ordering_trivial_h():
    g = make_cyclic(4)
    t = build_transversal(g, whole_group(g), trivial_subgroup(g))
    ordering = canonical_ordering(g, t)
    assert list(ordering.order) == [0, 3, 2, 1]  # tau_p^{-1} for each tau


def test_left_translate_identity_is_noop():
    g = make_cyclic(6)
    ordering = natural_ordering(g)
    rng = np.random.default_rng(0)
    alpha = rand_complex(rng, 6)
    np.testing.assert_array_equal(left_translate(g, 0, alpha, ordering), alpha)


def test_left_translate_delta_shift():
    g = make_cyclic(4)
    ordering = natural_ordering(g)
    alpha = np.array([1.0, 0, 0, 0], dtype=complex)
    np.testing.assert_array_equal(
        left_translate(g, 1, alpha, ordering), np.array([0, 1.0, 0, 0])
    )


def test_left_translate_rejects_length_mismatch():
    g = make_cyclic(4)
    with pytest.raises(ValueError, match="length"):
        left_translate(g, 1, np.zeros(3), natural_ordering(g))


@given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_left_translate_composition_d3(s, t, seed):
    g = make_dihedral(3)
    ordering = natural_ordering(g)
    rng = np.random.default_rng(seed)
    alpha = rand_complex(rng, 6)
    via_two = left_translate(g, s, left_translate(g, t, alpha, ordering), ordering)
    # direct formula: result(x) = alpha((st)^{-1} x)
    st_inv = g.inv(g.mul(s, t))
    direct = np.array([alpha[ordering.position[g.mul(st_inv, x)]] for x in ordering.order])
    np.testing.assert_array_equal(via_two, direct)
    assert np.isclose(np.linalg.norm(via_two), np.linalg.norm(alpha))


def test_left_translate_respects_canonical_ordering():
    g = make_cyclic(6)
    t = build_transversal(g, subgroup_closure(g, [2]), subgroup_closure(g, [3]))
    ordering = canonical_ordering(g, t)
    rng = np.random.default_rng(1)
    alpha = rand_complex(rng, 6)
    out = left_translate(g, 2, alpha, ordering)
    for i, elem in enumerate(ordering.order):
        src = ordering.position[g.mul(g.inv(2), elem)]
        assert out[i] == alpha[src]
