"""Finite group arithmetic on Cayley tables with 0-based element indices.

Elements of a group of order n are the integers ``0..n-1``; all structure
lives in the multiplication table.  Groups are value objects: every instance
is fully validated at construction (Latin square, identity, inverses, and an
exhaustive associativity sweep), so downstream code never re-checks axioms.

The module also fixes the element ordering convention used by every matrix in
the package: given an Abelian subgroup K with complement H, the group is
listed as the concatenation of the cosets ``tau_p^{-1} H`` for the transversal
``tau_0 = e, tau_1, ...`` of K, with H always traversed in ascending index
order.  See :func:`canonical_ordering`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

MAX_GROUP_ORDER = 256
MAX_COMPLEMENT_SEARCH_ORDER = 64


class GroupStructureError(ValueError):
    """A multiplication table failed one of the group axioms."""


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Finite group given by its Cayley table.

    ``cayley[g, h]`` is the index of the product ``g h``.  Construction
    verifies all axioms exhaustively and is refused above order
    ``MAX_GROUP_ORDER`` (the associativity sweep is cubic in the order).
    """

    cayley: np.ndarray
    identity: int
    inverses: np.ndarray
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        table = np.asarray(self.cayley, dtype=np.int64)
        object.__setattr__(self, "cayley", table)
        object.__setattr__(self, "inverses", np.asarray(self.inverses, dtype=np.int64))
        _validate_table(table)
        n = table.shape[0]
        e = self.identity
        if not (0 <= e < n) or not (
            np.array_equal(table[e], np.arange(n)) and np.array_equal(table[:, e], np.arange(n))
        ):
            raise GroupStructureError(f"element {e} is not a two-sided identity")
        _validate_associativity(table)
        inv = self.inverses
        if inv.shape != (n,) or not (
            np.all(table[np.arange(n), inv] == e) and np.all(table[inv, np.arange(n)] == e)
        ):
            raise GroupStructureError("inverse table is inconsistent with the identity")
        if self.labels is not None and len(self.labels) != n:
            raise GroupStructureError(f"got {len(self.labels)} labels for {n} elements")
        self.cayley.setflags(write=False)
        self.inverses.setflags(write=False)

    @property
    def order(self) -> int:
        return int(self.cayley.shape[0])

    def mul(self, g: int, h: int) -> int:
        return int(self.cayley[g, h])

    def inv(self, g: int) -> int:
        return int(self.inverses[g])

    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.cayley, self.cayley.T))

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels is not None else str(g)

    # Value semantics: two constructions of the same table are the same group.
    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteGroup)
            and self.identity == other.identity
            and np.array_equal(self.cayley, other.cayley)
        )

    def __hash__(self) -> int:
        return hash((self.identity, self.cayley.tobytes()))

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"


def _validate_table(table: np.ndarray) -> None:
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise GroupStructureError(f"multiplication table must be square, got {table.shape}")
    n = table.shape[0]
    if n == 0:
        raise GroupStructureError("empty multiplication table")
    if n > MAX_GROUP_ORDER:
        raise GroupStructureError(
            f"order {n} exceeds the construction cap {MAX_GROUP_ORDER}"
        )
    if table.min() < 0 or table.max() >= n:
        raise GroupStructureError("table entries must be element indices")
    ref = np.arange(n)
    for g in range(n):
        if not np.array_equal(np.sort(table[g]), ref):
            raise GroupStructureError(f"row {g} of the table is not a permutation")
    for h in range(n):
        if not np.array_equal(np.sort(table[:, h]), ref):
            raise GroupStructureError(f"column {h} of the table is not a permutation")


def _validate_associativity(table: np.ndarray) -> None:
    # (g h) k == g (h k), swept one g at a time to bound memory.
    n = table.shape[0]
    for g in range(n):
        left = table[table[g], :]
        right = table[g][table]
        if not np.array_equal(left, right):
            h, k = np.argwhere(left != right)[0]
            raise GroupStructureError(
                f"associativity fails at ({g}, {int(h)}, {int(k)})"
            )


def _find_identity(table: np.ndarray) -> int:
    n = table.shape[0]
    ref = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], ref) and np.array_equal(table[:, e], ref):
            return e
    raise GroupStructureError("table has no two-sided identity")


def _inverses_from_table(table: np.ndarray, identity: int) -> np.ndarray:
    return np.argmax(table == identity, axis=1).astype(np.int64)


def from_cayley_table(table, labels: Optional[Sequence[str]] = None) -> FiniteGroup:
    """Build a validated group from a raw multiplication table."""
    arr = np.asarray(table, dtype=np.int64)
    _validate_table(arr)
    e = _find_identity(arr)
    return FiniteGroup(
        cayley=arr,
        identity=e,
        inverses=_inverses_from_table(arr, e),
        labels=tuple(labels) if labels is not None else None,
    )


def make_cyclic(m: int) -> FiniteGroup:
    """Cyclic group of order m with addition mod m."""
    if m < 1:
        raise ValueError(f"cyclic group order must be positive, got {m}")
    idx = np.arange(m)
    table = (idx[:, None] + idx[None, :]) % m
    return FiniteGroup(
        cayley=table,
        identity=0,
        inverses=(-idx) % m,
        labels=tuple(str(i) for i in range(m)),
    )


def make_dihedral(m: int) -> FiniteGroup:
    """Dihedral group of order 2m.

    Elements are ordered ``e, g, ..., g^{m-1}, t, t g, ..., t g^{m-1}`` where
    g is the basic rotation and t a reflection, subject to ``g^m = t^2 = e``
    and ``t g = g^{m-1} t``.
    """
    if m < 2:
        raise ValueError(f"dihedral parameter must be at least 2, got {m}")
    n = 2 * m
    flip = np.arange(n) // m  # 0 for rotations, 1 for reflections
    rot = np.arange(n) % m
    s1, s2 = flip[:, None], flip[None, :]
    k1, k2 = rot[:, None], rot[None, :]
    # (s1,k1)(s2,k2) = (s1 xor s2, k2 + (-1)^{s2} k1) in additive rotation part
    sign = 1 - 2 * s2
    table = (s1 ^ s2) * m + (k2 + sign * k1) % m
    labels = ["e"] + [f"g^{k}" for k in range(1, m)]
    labels += ["t"] + [f"t g^{k}" for k in range(1, m)]
    return from_cayley_table(table, labels)


@dataclass(frozen=True, eq=False)
class Subgroup:
    """Subset of a parent group, validated to be closed under product and inverse."""

    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(sorted(set(int(x) for x in self.elements)))
        object.__setattr__(self, "elements", elems)
        g = self.parent
        if any(not 0 <= x < g.order for x in elems):
            raise ValueError(f"subgroup elements out of range for order {g.order}")
        if g.identity not in elems:
            raise ValueError("subgroup does not contain the identity")
        members = set(elems)
        for a in elems:
            if g.inv(a) not in members:
                raise ValueError(f"subgroup is not closed under inverse at {a}")
            for b in elems:
                if g.mul(a, b) not in members:
                    raise ValueError(f"subgroup is not closed under product at ({a}, {b})")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: int) -> bool:
        return int(g) in set(self.elements)

    @cached_property
    def is_abelian(self) -> bool:
        g = self.parent
        return all(
            g.mul(a, b) == g.mul(b, a) for a in self.elements for b in self.elements
        )

    def __repr__(self) -> str:
        return f"Subgroup({list(self.elements)})"


def subgroup_closure(group: FiniteGroup, generators: Sequence[int]) -> Subgroup:
    """Smallest subgroup containing the given generators."""
    for x in generators:
        if not 0 <= int(x) < group.order:
            raise ValueError(f"generator {x} out of range for order {group.order}")
    members = {group.identity} | {int(x) for x in generators}
    frontier = list(members)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(members):
                for prod in (group.mul(a, b), group.mul(b, a)):
                    if prod not in members:
                        members.add(prod)
                        nxt.append(prod)
        frontier = nxt
    return Subgroup(group, tuple(sorted(members)))


def whole_group(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, tuple(range(group.order)))


def trivial_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, (group.identity,))


def left_cosets(group: FiniteGroup, subgroup: Subgroup) -> list[tuple[int, ...]]:
    """Partition into left cosets ``g H``, identity coset first, then by least element."""
    if subgroup.parent != group:
        raise ValueError("subgroup does not belong to this group")
    h = np.array(subgroup.elements)
    seen = set()
    cosets = []
    for g in group.elements():
        if g in seen:
            continue
        coset = tuple(sorted(int(x) for x in group.cayley[g, h]))
        seen.update(coset)
        cosets.append(coset)
    cosets.sort(key=lambda c: (group.identity not in c, min(c)))
    return cosets


def _closure_set(group: FiniteGroup, seed: frozenset[int]) -> frozenset[int]:
    members = set(seed) | {group.identity}
    frontier = list(members)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(members):
                for prod in (group.mul(a, b), group.mul(b, a)):
                    if prod not in members:
                        members.add(prod)
                        nxt.append(prod)
        frontier = nxt
    return frozenset(members)


def _subgroups_up_to_order(group: FiniteGroup, max_order: int) -> list[tuple[int, ...]]:
    # Bottom-up closure lattice; every subgroup of order <= max_order is the
    # closure of a chain of single-element extensions that stays inside it.
    start = frozenset({group.identity})
    found = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for current in frontier:
            for x in group.elements():
                if x in current:
                    continue
                grown = _closure_set(group, current | {x})
                if len(grown) <= max_order and grown not in found:
                    found.add(grown)
                    nxt.append(grown)
        frontier = nxt
    return sorted(tuple(sorted(s)) for s in found)


def find_complements(group: FiniteGroup, k: Subgroup) -> list[Subgroup]:
    """All subgroups H with ``K H = G`` and ``K ∩ H = {e}``, in deterministic order.

    Exhaustive over the subgroup lattice; refused above order
    ``MAX_COMPLEMENT_SEARCH_ORDER``.
    """
    if k.parent != group:
        raise ValueError("subgroup does not belong to this group")
    if not k.is_abelian:
        raise ValueError("complement search requires an Abelian subgroup")
    if group.order > MAX_COMPLEMENT_SEARCH_ORDER:
        raise ValueError(
            f"complement search is limited to order {MAX_COMPLEMENT_SEARCH_ORDER}, "
            f"got {group.order}"
        )
    target = group.order // k.order
    k_set = set(k.elements)
    out = []
    for candidate in _subgroups_up_to_order(group, target):
        if len(candidate) == target and k_set.intersection(candidate) == {group.identity}:
            # |K||H| = |G| and trivial intersection force K H = G.
            out.append(Subgroup(group, candidate))
    return out


def find_complement(group: FiniteGroup, k: Subgroup) -> Optional[Subgroup]:
    """First complement of K in deterministic enumeration order, if any."""
    found = find_complements(group, k)
    return found[0] if found else None


@dataclass(frozen=True, eq=False)
class Transversal:
    """Sampling subgroup K listed as ``tau_0 = e, tau_1, ...`` plus its complement H."""

    subgroup_k: Subgroup
    complement_h: Subgroup
    taus: tuple[int, ...]

    @property
    def ell(self) -> int:
        return len(self.taus)

    @property
    def group(self) -> FiniteGroup:
        return self.subgroup_k.parent


def build_transversal(group: FiniteGroup, k: Subgroup, h: Subgroup) -> Transversal:
    """Validate the pair (K, H) and list K with the identity first.

    Requires K Abelian, ``K ∩ H = {e}`` and ``K H = G``; each violation is
    reported with the offending elements.
    """
    if k.parent != group or h.parent != group:
        raise ValueError("subgroups do not belong to this group")
    if not k.is_abelian:
        raise ValueError("sampling subgroup K must be Abelian")
    shared = sorted(set(k.elements) & set(h.elements) - {group.identity})
    if shared:
        raise ValueError(f"K and H intersect beyond the identity at {shared[0]}")
    if k.order * h.order != group.order:
        raise ValueError(
            f"|K| * |H| = {k.order * h.order} does not match |G| = {group.order}"
        )
    products: dict[int, tuple[int, int]] = {}
    for a in k.elements:
        for b in h.elements:
            p = group.mul(a, b)
            if p in products:
                raise ValueError(
                    f"product map K x H is not injective: {products[p]} and "
                    f"({a}, {b}) both give {p}"
                )
            products[p] = (a, b)
    taus = (group.identity,) + tuple(x for x in k.elements if x != group.identity)
    return Transversal(subgroup_k=k, complement_h=h, taus=taus)


@dataclass(frozen=True, eq=False)
class CanonicalOrdering:
    """Fixed listing of G as consecutive cosets ``tau_p^{-1} H``.

    ``order[i]`` is the element at position i; ``position[g]`` inverts it.
    Every coefficient vector and every cross-covariance matrix in the package
    is indexed by this listing.
    """

    order: np.ndarray
    position: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "order", np.asarray(self.order, dtype=np.int64))
        object.__setattr__(self, "position", np.asarray(self.position, dtype=np.int64))
        self.order.setflags(write=False)
        self.position.setflags(write=False)

    @property
    def size(self) -> int:
        return int(self.order.shape[0])


def canonical_ordering(group: FiniteGroup, transversal: Transversal) -> CanonicalOrdering:
    """Concatenate the cosets ``tau_p^{-1} H`` with H in ascending index order."""
    if transversal.group != group:
        raise ValueError("transversal does not belong to this group")
    h_elems = transversal.complement_h.elements
    order = []
    for tau in transversal.taus:
        tau_inv = group.inv(tau)
        order.extend(group.mul(tau_inv, h) for h in h_elems)
    if len(set(order)) != group.order:
        raise ValueError("cosets do not partition the group")  # unreachable for valid input
    arr = np.array(order, dtype=np.int64)
    pos = np.empty(group.order, dtype=np.int64)
    pos[arr] = np.arange(group.order)
    return CanonicalOrdering(order=arr, position=pos)


def natural_ordering(group: FiniteGroup) -> CanonicalOrdering:
    """Identity ordering: the transversal K = {e} with H = G traversed ascending."""
    idx = np.arange(group.order, dtype=np.int64)
    return CanonicalOrdering(order=idx.copy(), position=idx.copy())


def left_translate(
    group: FiniteGroup, s: int, alpha: np.ndarray, ordering: CanonicalOrdering
) -> np.ndarray:
    """Left regular action on coefficient vectors: result(g) = alpha(s^{-1} g).

    A pure entry permutation of ``alpha`` under the given ordering.
    """
    vec = np.asarray(alpha)
    if vec.shape != (group.order,):
        raise ValueError(f"coefficient vector must have length {group.order}, got {vec.shape}")
    s_inv = group.inv(s)
    src = ordering.position[group.cayley[s_inv, ordering.order]]
    return vec[src]
