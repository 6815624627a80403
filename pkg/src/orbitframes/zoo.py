"""Standard collection of small designs used by the test suite and scripts.

Cyclic groups of orders 4, 6, 8, 12, 24 and dihedral groups for m = 3, 4, 5,
each under the regular representation and under a generic unitary conjugation
of it.  System vectors are deltas at the complement's elements (conjugated
along with the representation), which always yields a recoverable basis-case
design.  A separate list of deliberately deficient designs (too few systems,
zero systems, colinear systems) exercises the negative paths.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .covariance import CyclicSubspace, build_cyclic_subspace
from .groups import (
    FiniteGroup,
    Transversal,
    build_transversal,
    canonical_ordering,
    make_cyclic,
    make_dihedral,
    subgroup_closure,
)
from .representations import (
    UnitaryRep,
    conjugate_representation,
    haar_like_unitary,
    regular_representation,
)
from .sampling import SamplingDesign, build_design
from .scenarios import delta

# (name, group builder, K generators, H generators)
_GROUP_TABLE = (
    ("cyclic4", lambda: make_cyclic(4), (1,), (0,)),
    ("cyclic6", lambda: make_cyclic(6), (2,), (3,)),
    ("cyclic8", lambda: make_cyclic(8), (1,), (0,)),
    ("cyclic12", lambda: make_cyclic(12), (4,), (3,)),
    ("cyclic24", lambda: make_cyclic(24), (3,), (8,)),
    ("dihedral3", lambda: make_dihedral(3), (3,), (1,)),
    ("dihedral4", lambda: make_dihedral(4), (4,), (1,)),
    ("dihedral5", lambda: make_dihedral(5), (5,), (1,)),
)


@dataclass(frozen=True)
class ZooEntry:
    name: str
    group: FiniteGroup
    rep: UnitaryRep
    transversal: Transversal
    subspace: CyclicSubspace
    design: SamplingDesign


def zoo_group_specs():
    """The raw (name, group, K, H) quadruples."""
    out = []
    for name, build, k_gens, h_gens in _GROUP_TABLE:
        group = build()
        out.append(
            (
                name,
                group,
                subgroup_closure(group, k_gens),
                subgroup_closure(group, h_gens),
            )
        )
    return out


def _delta_entry(name, group, k, h, conjugate_seed=None) -> ZooEntry:
    rep = regular_representation(group)
    generator = delta(group.order, group.identity)
    systems = np.stack([delta(group.order, x) for x in h.elements])
    if conjugate_seed is not None:
        q = haar_like_unitary(group.order, conjugate_seed)
        rep = conjugate_representation(rep, q)
        generator = q @ generator
        systems = (q @ systems.T).T
    transversal = build_transversal(group, k, h)
    ordering = canonical_ordering(group, transversal)
    subspace = build_cyclic_subspace(rep, generator, ordering)
    design = build_design(subspace, systems, transversal)
    return ZooEntry(
        name=name if conjugate_seed is None else f"{name}-conj",
        group=group,
        rep=rep,
        transversal=transversal,
        subspace=subspace,
        design=design,
    )


def recoverable_zoo(include_conjugated: bool = True) -> list[ZooEntry]:
    """All standard recoverable designs (16 with conjugated variants)."""
    entries = []
    for i, (name, group, k, h) in enumerate(zoo_group_specs()):
        entries.append(_delta_entry(name, group, k, h))
        if include_conjugated:
            entries.append(_delta_entry(name, group, k, h, conjugate_seed=100 + i))
    return entries


def deficient_zoo() -> list[ZooEntry]:
    """Deliberately unrecoverable designs: N < |H|, zero systems, colinear systems."""
    entries = []

    def add(name, group, k_gens, h_gens, systems):
        k = subgroup_closure(group, k_gens)
        h = subgroup_closure(group, h_gens)
        rep = regular_representation(group)
        transversal = build_transversal(group, k, h)
        ordering = canonical_ordering(group, transversal)
        subspace = build_cyclic_subspace(
            rep, delta(group.order, group.identity), ordering
        )
        design = build_design(subspace, np.stack(systems), transversal)
        entries.append(
            ZooEntry(
                name=name,
                group=group,
                rep=rep,
                transversal=transversal,
                subspace=subspace,
                design=design,
            )
        )

    d3 = make_dihedral(3)
    add("dihedral3-short", d3, (3,), (1,), [delta(6, 0), delta(6, 1)])
    add("dihedral3-colinear", d3, (3,), (1,), [delta(6, 0), delta(6, 0) * 2.0, delta(6, 1)])
    d4 = make_dihedral(4)
    add("dihedral4-short", d4, (4,), (1,), [delta(8, j) for j in range(3)])
    d5 = make_dihedral(5)
    add("dihedral5-short", d5, (5,), (1,), [delta(10, j) for j in range(4)])
    z6 = make_cyclic(6)
    add("cyclic6-zero", z6, (2,), (3,), [np.zeros(6, dtype=np.complex128)] * 2)
    add("cyclic6-colinear", z6, (2,), (3,), [delta(6, 1), delta(6, 1) * (2.0 + 1j)])
    add("cyclic6-short", z6, (2,), (3,), [delta(6, 0)])
    z12 = make_cyclic(12)
    add("cyclic12-short", z12, (4,), (3,), [delta(12, j) for j in range(3)])
    z4 = make_cyclic(4)
    add("cyclic4-zero", z4, (1,), (0,), [np.zeros(4, dtype=np.complex128)])
    z24 = make_cyclic(24)
    add("cyclic24-short", z24, (3,), (8,), [delta(24, j) for j in range(2)])
    return entries
