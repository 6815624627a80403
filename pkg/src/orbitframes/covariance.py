"""Group-orbit subspaces, covariance functions, and the synthesis isomorphism.

Conventions used throughout the package:

* inner products are conjugate-linear in the first argument;
* a coefficient vector is a complex array of length |G| whose i-th entry
  belongs to the group element ``ordering.order[i]``;
* the orbit matrix of a generator ``a`` stacks ``U(g) a`` as columns, one per
  element, in that same ordering.

``synthesize`` maps coefficients to the state ``sum_g alpha(g) U(g) a`` and
``analyze`` inverts it by least squares.  Both refuse dependent orbits in
strict mode; lenient mode degrades to minimum-norm behavior with a warning.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import linalg
from .groups import CanonicalOrdering, FiniteGroup, natural_ordering
from .representations import UnitaryRep
from .tolerances import EPS, STATIONARITY_TOL


class DependentOrbitError(ValueError):
    """The orbit of the generator is linearly dependent."""


def _as_state(rep: UnitaryRep, v) -> np.ndarray:
    arr = np.asarray(v, dtype=np.complex128)
    if arr.shape != (rep.dim,):
        raise ValueError(f"state must have dimension {rep.dim}, got shape {arr.shape}")
    return arr


def auto_covariance(rep: UnitaryRep, a, g: int) -> complex:
    """``<a, U(g) a>``."""
    vec = _as_state(rep, a)
    return complex(np.vdot(vec, rep.matrices[g] @ vec))


def cross_covariance(rep: UnitaryRep, a, b, g: int) -> complex:
    """``<a, U(g) b>``."""
    va = _as_state(rep, a)
    vb = _as_state(rep, b)
    return complex(np.vdot(va, rep.matrices[g] @ vb))


def covariance_sequence(rep: UnitaryRep, a, b=None) -> np.ndarray:
    """All values ``<a, U(g) b>`` as a vector indexed by element (b defaults to a)."""
    va = _as_state(rep, a)
    vb = va if b is None else _as_state(rep, b)
    return np.einsum("d,gde,e->g", va.conj(), rep.matrices, vb)


@dataclass(frozen=True, eq=False)
class CyclicSubspace:
    """Span of the orbit ``{U(g) a}`` with its Gram matrix and rank diagnostics.

    ``independent`` is decided from the Gram spectrum: smallest singular value
    above ``|G| * eps * sigma_max``.  ``orbit_rank`` is the SVD rank of the
    orbit matrix itself; the two agree away from the threshold.
    """

    rep: UnitaryRep
    generator: np.ndarray
    ordering: CanonicalOrdering
    orbit: np.ndarray       # (d, |G|)
    gram: np.ndarray        # (|G|, |G|)
    gram_sigma_min: float
    gram_sigma_max: float
    gram_det_sign: complex
    orbit_rank: int
    independent: bool

    @property
    def group(self) -> FiniteGroup:
        return self.rep.group

    @property
    def dim(self) -> int:
        return self.rep.dim


def build_cyclic_subspace(
    rep: UnitaryRep, a, ordering: CanonicalOrdering | None = None
) -> CyclicSubspace:
    """Assemble the orbit and Gram matrix of a nonzero generator."""
    vec = _as_state(rep, a)
    if np.linalg.norm(vec) == 0.0:
        raise ValueError("generator must be nonzero")
    if ordering is None:
        ordering = natural_ordering(rep.group)
    if ordering.size != rep.group.order:
        raise ValueError("ordering does not match the group order")
    orbit = (rep.matrices[ordering.order] @ vec).T
    gram = orbit.conj().T @ orbit
    gram_svals = linalg.svd(gram).singular_values
    sigma_max = float(gram_svals[0])
    sigma_min = float(gram_svals[-1])
    independent = sigma_min > rep.group.order * EPS * sigma_max
    orbit_rank = linalg.numerical_rank(
        linalg.svd(orbit).singular_values, *orbit.shape
    )
    det = np.linalg.det(gram)
    det_sign = det / abs(det) if det != 0 else 0j
    return CyclicSubspace(
        rep=rep,
        generator=vec,
        ordering=ordering,
        orbit=orbit,
        gram=gram,
        gram_sigma_min=sigma_min,
        gram_sigma_max=sigma_max,
        gram_det_sign=complex(det_sign),
        orbit_rank=orbit_rank,
        independent=bool(independent),
    )


def _require_independent(sub: CyclicSubspace, strict: bool, what: str) -> None:
    if sub.independent:
        return
    if strict:
        raise DependentOrbitError(
            f"{what} needs an independent orbit "
            f"(gram sigma_min {sub.gram_sigma_min:.3e})"
        )
    warnings.warn(f"{what} on a dependent orbit", stacklevel=3)


def synthesize(sub: CyclicSubspace, alpha, strict: bool = True) -> np.ndarray:
    """Map coefficients to the state ``sum_g alpha(g) U(g) a``."""
    vec = np.asarray(alpha, dtype=np.complex128)
    if vec.shape != (sub.group.order,):
        raise ValueError(
            f"coefficient vector must have length {sub.group.order}, got {vec.shape}"
        )
    _require_independent(sub, strict, "synthesis")
    return sub.orbit @ vec


def analyze(sub: CyclicSubspace, x, strict: bool = True) -> np.ndarray:
    """Least-squares coefficients of a state; exact on members of the subspace."""
    vec = _as_state(sub.rep, x)
    _require_independent(sub, strict, "analysis")
    return linalg.least_squares_solve(sub.orbit, vec)


def check_stationarity(group: FiniteGroup, vectors, tol: float = STATIONARITY_TOL) -> bool:
    """Whether ``<x_g, x_g'> == <x_{hg}, x_{hg'}>`` for all g, g', h.

    ``vectors`` holds one state per element, indexed by element index.
    """
    arr = np.asarray(vectors, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != group.order:
        raise ValueError(f"need one vector per element, got shape {arr.shape}")
    pair = arr.conj() @ arr.T
    for h in group.elements():
        shifted = group.cayley[h]
        if np.abs(pair[np.ix_(shifted, shifted)] - pair).max() > tol:
            return False
    return True
