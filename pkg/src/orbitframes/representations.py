"""Unitary representations of finite groups on complex d-dimensional space.

Matrices are stored dense, one per group element, and every instance is
verified at construction: identity, homomorphism over all pairs, and
unitarity, at the tolerances from :mod:`orbitframes.tolerances`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .groups import FiniteGroup, make_cyclic
from .tolerances import REP_IDENTITY_TOL, REP_PRODUCT_TOL, REP_UNITARY_TOL


class RepresentationError(ValueError):
    """The supplied matrices do not form a unitary representation."""


@dataclass(frozen=True, eq=False)
class UnitaryRep:
    group: FiniteGroup
    matrices: np.ndarray  # shape (|G|, d, d)

    def __post_init__(self):
        mats = np.asarray(self.matrices, dtype=np.complex128)
        object.__setattr__(self, "matrices", mats)
        _validate_rep(self.group, mats)
        self.matrices.setflags(write=False)

    @property
    def dim(self) -> int:
        return int(self.matrices.shape[1])

    def matrix(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def __repr__(self) -> str:
        return f"UnitaryRep(order={self.group.order}, dim={self.dim})"


def _validate_rep(group: FiniteGroup, mats: np.ndarray) -> None:
    n = group.order
    if mats.ndim != 3 or mats.shape[0] != n or mats.shape[1] != mats.shape[2]:
        raise RepresentationError(
            f"need one square matrix per element, got shape {mats.shape} for order {n}"
        )
    d = mats.shape[1]
    if not np.all(np.isfinite(mats)):
        raise RepresentationError("matrices have non-finite entries")
    eye = np.eye(d)
    dev = np.abs(mats[group.identity] - eye).max()
    if dev > REP_IDENTITY_TOL:
        raise RepresentationError(f"identity matrix is off by {dev:.3e}")
    herm = mats.conj().transpose(0, 2, 1)
    unitary_dev = np.linalg.norm(herm @ mats - eye, axis=(1, 2))
    worst = int(np.argmax(unitary_dev))
    if unitary_dev[worst] > REP_UNITARY_TOL * d:
        raise RepresentationError(
            f"matrix for element {worst} is not unitary (deviation {unitary_dev[worst]:.3e})"
        )
    for g in range(n):
        products = mats[g] @ mats
        expected = mats[group.cayley[g]]
        dev_gh = np.linalg.norm(products - expected, axis=(1, 2))
        h = int(np.argmax(dev_gh))
        if dev_gh[h] > REP_PRODUCT_TOL * d:
            raise RepresentationError(
                f"homomorphism fails at pair ({g}, {h}) with deviation {dev_gh[h]:.3e}"
            )


def regular_representation(group: FiniteGroup) -> UnitaryRep:
    """Permutation matrices of left translation on basis functions over G."""
    n = group.order
    mats = np.zeros((n, n, n), dtype=np.complex128)
    cols = np.arange(n)
    for s in range(n):
        mats[s, group.cayley[s], cols] = 1.0
    return UnitaryRep(group=group, matrices=mats)


def cyclic_shift_representation(m: int) -> UnitaryRep:
    """The cyclic group of order m acting on length-m signals by index shift.

    The generator maps ``x(k)`` to ``x(k-1)`` with periodic wrap-around.
    """
    group = make_cyclic(m)
    shift = np.roll(np.eye(m, dtype=np.complex128), 1, axis=0)
    mats = np.stack([np.linalg.matrix_power(shift, k) for k in range(m)])
    return UnitaryRep(group=group, matrices=mats)


def from_matrices(group: FiniteGroup, matrices) -> UnitaryRep:
    """Validate an explicit family of matrices as a representation."""
    return UnitaryRep(group=group, matrices=np.asarray(matrices, dtype=np.complex128))


def conjugate_representation(rep: UnitaryRep, q: np.ndarray) -> UnitaryRep:
    """Similarity transform ``U(g) -> Q U(g) Q*`` by a unitary Q."""
    qm = np.asarray(q, dtype=np.complex128)
    d = rep.dim
    if qm.shape != (d, d):
        raise ValueError(f"conjugating matrix must be {d}x{d}, got {qm.shape}")
    dev = np.linalg.norm(qm.conj().T @ qm - np.eye(d))
    if dev > REP_UNITARY_TOL * d:
        raise ValueError(f"conjugating matrix is not unitary (deviation {dev:.3e})")
    mats = np.einsum("ij,gjk,lk->gil", qm, rep.matrices, qm.conj())
    return UnitaryRep(group=rep.group, matrices=mats)


def haar_like_unitary(dim: int, seed: int) -> np.ndarray:
    """QR-orthonormalized complex Gaussian matrix, a convenient generic unitary."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))
