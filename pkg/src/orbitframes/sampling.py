"""Multichannel sampling and reconstruction on group-orbit subspaces.

Pipeline
--------
Pick an Abelian subgroup K (the sampling set, listed as ``tau_0 = e, tau_1,
...``) with complement H, fix N system vectors ``b_1 .. b_N``, and measure a
state x through the generalized samples ``<U(tau_n) b_j, x>``.  In coefficient
space these samples are rows of the block cross-covariance matrix acting on
the coefficients of x:

    ``block[j][n, i] = <b_j, U(tau_n^{-1} s_i) a>``

with ``s_i`` running through the canonical coset ordering.  The state is
recoverable exactly when the stacked matrix has full column rank |G|, which
needs at least ``N >= |H|`` systems.

Two reconstruction routes are provided.  The Moore-Penrose pseudoinverse is
the generic dual; ``structured_left_inverse`` builds a left inverse whose
columns are left translates of its N leading columns, so that reconstruction
becomes a superposition of the translated states ``U(tau_n) c_j`` with the
samples as coefficients.  In the square case ``N == |H|`` those states form a
basis and the samples of the ``c_j`` interpolate the Kronecker delta.

Sample vectors are always ordered j-major, n-minor: all translates of system
1 first, then system 2, and so on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from . import linalg
from .covariance import CyclicSubspace, DependentOrbitError, synthesize
from .groups import CanonicalOrdering, FiniteGroup, Transversal, canonical_ordering
from .representations import UnitaryRep
from .tolerances import (
    COMMUTATOR_TOL,
    HERMITIAN_INPUT_TOL,
    HERMITIAN_STRICT_TOL,
    ILL_CONDITIONED_FACTOR,
    INTERPOLATION_TOL,
    LEFT_INVERSE_TOL,
    RECONSTRUCTION_RTOL,
    SEED_EQUATION_TOL,
)


class UnrecoverableDesignError(ValueError):
    """The sampling design cannot recover every state in the subspace."""


@dataclass(frozen=True, eq=False)
class SamplingDesign:
    """A subspace, system vectors, and the assembled cross-covariance blocks."""

    subspace: CyclicSubspace
    systems: np.ndarray          # (N, d)
    transversal: Transversal
    ordering: CanonicalOrdering
    blocks: np.ndarray           # (N, ell, |G|)
    stacked: np.ndarray          # (N * ell, |G|)
    singular_values: np.ndarray
    rank: int
    sigma_min: float
    rank_cutoff: float
    recoverable: bool
    ill_conditioned: bool
    k_product: np.ndarray        # (ell, ell) indices into taus

    @property
    def group(self) -> FiniteGroup:
        return self.subspace.group

    @property
    def rep(self) -> UnitaryRep:
        return self.subspace.rep

    @property
    def n_systems(self) -> int:
        return int(self.systems.shape[0])

    @property
    def ell(self) -> int:
        return self.transversal.ell

    @property
    def h_order(self) -> int:
        return self.transversal.complement_h.order


@dataclass(frozen=True, eq=False)
class SampleSet:
    """Generalized samples in j-major, n-minor order."""

    values: np.ndarray
    n_systems: int
    ell: int

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.shape != (self.n_systems * self.ell,):
            raise ValueError(
                f"expected {self.n_systems * self.ell} samples, got shape {vals.shape}"
            )
        object.__setattr__(self, "values", vals)

    def by_system(self) -> np.ndarray:
        """Samples reshaped to (N, ell)."""
        return self.values.reshape(self.n_systems, self.ell)


def build_design(
    sub: CyclicSubspace, systems: Sequence, transversal: Transversal
) -> SamplingDesign:
    """Assemble the stacked cross-covariance matrix and its rank diagnostics."""
    group = sub.group
    if transversal.group != group:
        raise ValueError("transversal does not belong to the subspace's group")
    expected = canonical_ordering(group, transversal)
    if not np.array_equal(expected.order, sub.ordering.order):
        raise ValueError(
            "subspace ordering does not match the transversal's canonical ordering"
        )
    arr = np.asarray(systems, dtype=np.complex128)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise ValueError("systems must be a nonempty list of vectors")
    if arr.shape[1] != sub.dim:
        raise ValueError(
            f"system vectors must have dimension {sub.dim}, got {arr.shape[1]}"
        )
    if not sub.independent:
        raise DependentOrbitError("sampling designs need an independent orbit")

    taus = np.array(transversal.taus)
    ell = transversal.ell
    n = arr.shape[0]
    order = sub.ordering.order

    # cross-covariance sequences r_j(g) = <b_j, U(g) a>, indexed by element
    orbit_nat = rep_orbit_natural(sub)
    r_all = arr.conj() @ orbit_nat.T                       # (N, |G|)
    col_elems = group.cayley[np.ix_(group.inverses[taus], order)]   # (ell, |G|)
    blocks = r_all[:, col_elems]                           # (N, ell, |G|)
    stacked = blocks.reshape(n * ell, group.order)

    svals = linalg.svd(stacked).singular_values
    rank = linalg.numerical_rank(svals, *stacked.shape)
    cutoff = linalg.rank_cutoff(*stacked.shape, float(svals[0])) if svals.size else 0.0
    sigma_min = float(svals[-1]) if svals.size else 0.0
    recoverable = rank == group.order
    ill = recoverable and sigma_min < ILL_CONDITIONED_FACTOR * cutoff

    tau_pos = {int(t): i for i, t in enumerate(taus)}
    k_product = np.empty((ell, ell), dtype=np.int64)
    for i in range(ell):
        for m in range(ell):
            k_product[i, m] = tau_pos[group.mul(int(taus[i]), int(taus[m]))]

    return SamplingDesign(
        subspace=sub,
        systems=arr,
        transversal=transversal,
        ordering=sub.ordering,
        blocks=blocks,
        stacked=stacked,
        singular_values=svals,
        rank=rank,
        sigma_min=sigma_min,
        rank_cutoff=cutoff,
        recoverable=recoverable,
        ill_conditioned=bool(ill),
        k_product=k_product,
    )


def rep_orbit_natural(sub: CyclicSubspace) -> np.ndarray:
    """Orbit states ``U(g) a`` indexed by element (natural order), as rows."""
    return sub.rep.matrices @ sub.generator


def generalized_samples(design: SamplingDesign, x) -> SampleSet:
    """Measure a state: ``sample[j, n] = <U(tau_n) b_j, x>``."""
    vec = np.asarray(x, dtype=np.complex128)
    if vec.shape != (design.subspace.dim,):
        raise ValueError(
            f"state must have dimension {design.subspace.dim}, got shape {vec.shape}"
        )
    taus = list(design.transversal.taus)
    translated = np.einsum("nde,je->jnd", design.rep.matrices[taus], design.systems)
    vals = translated.conj() @ vec
    return SampleSet(values=vals.reshape(-1), n_systems=design.n_systems, ell=design.ell)


def frame_vectors(design: SamplingDesign) -> np.ndarray:
    """Coefficient-space analysis vectors, one per sample, as rows.

    Row (j, n) satisfies ``<row, alpha> = sample[j, n]`` for the state with
    coefficients alpha, i.e. the rows are the conjugated rows of the stacked
    matrix.  They span coefficient space exactly when the design is
    recoverable.
    """
    return design.stacked.conj()


class RecoverabilityResult(NamedTuple):
    rank: int
    recoverable: bool
    sigma_min: float


def check_recoverability(design: SamplingDesign) -> RecoverabilityResult:
    return RecoverabilityResult(design.rank, design.recoverable, design.sigma_min)


def moore_penrose_left_inverse(design: SamplingDesign) -> np.ndarray:
    """Pseudoinverse of the stacked matrix; a left inverse when recoverable."""
    if not design.recoverable:
        raise UnrecoverableDesignError(
            f"rank {design.rank} < {design.group.order}; no left inverse exists"
        )
    return linalg.pseudoinverse(design.stacked)


def left_inverse_family(design: SamplingDesign, u_free) -> np.ndarray:
    """Left inverse ``R+ + U (I - R R+)`` for an arbitrary parameter matrix U."""
    pinv = moore_penrose_left_inverse(design)
    u = np.asarray(u_free, dtype=np.complex128)
    if u.shape != pinv.shape:
        raise ValueError(f"parameter matrix must have shape {pinv.shape}, got {u.shape}")
    m = design.stacked.shape[0]
    return pinv + u @ (np.eye(m) - design.stacked @ pinv)


@dataclass(frozen=True, eq=False)
class StructuredLeftInverse:
    """Left inverse whose columns are left translates of its leading columns.

    ``matrix`` has one column per sample (j-major); column (j, n) is exactly
    the tau_n-translate of column (j, 0) as a coefficient-vector permutation.
    ``recon_vectors[j]`` is the state synthesized from column (j, 0); the
    reconstruction frame consists of their translates ``U(tau_n) c_j``.
    """

    seed: np.ndarray           # (|H|, N * ell)
    matrix: np.ndarray         # (|G|, N * ell)
    recon_vectors: np.ndarray  # (N, d)


def _assemble_structured(design: SamplingDesign, seed: np.ndarray) -> np.ndarray:
    """Tile seed columns into the full matrix, row block i taking column k
    with ``tau_i tau_n = tau_k``."""
    h = design.h_order
    ell = design.ell
    n = design.n_systems
    out = np.empty((design.group.order, n * ell), dtype=np.complex128)
    base = np.arange(n) * ell
    for i in range(ell):
        src = (base[:, None] + design.k_product[i][None, :]).reshape(-1)
        out[i * h : (i + 1) * h, :] = seed[:, src]
    return out


def structured_left_inverse(
    design: SamplingDesign, seed: Optional[np.ndarray] = None
) -> StructuredLeftInverse:
    """Build the translation-structured left inverse from a seed block.

    The seed is any |H| x (N ell) matrix with ``seed @ stacked = [I | 0]``;
    by default the first |H| rows of the Moore-Penrose pseudoinverse.
    """
    if not design.recoverable:
        raise UnrecoverableDesignError(
            f"rank {design.rank} < {design.group.order}; no left inverse exists"
        )
    h = design.h_order
    n_cols = design.n_systems * design.ell
    if seed is None:
        seed_arr = moore_penrose_left_inverse(design)[:h, :]
    else:
        seed_arr = np.asarray(seed, dtype=np.complex128)
        if seed_arr.shape != (h, n_cols):
            raise ValueError(f"seed must have shape {(h, n_cols)}, got {seed_arr.shape}")
    target = np.zeros((h, design.group.order), dtype=np.complex128)
    target[:, :h] = np.eye(h)
    seed_dev = float(np.linalg.norm(seed_arr @ design.stacked - target))
    if seed_dev > SEED_EQUATION_TOL:
        raise ValueError(
            f"seed does not satisfy its defining equation (deviation {seed_dev:.3e})"
        )
    matrix = _assemble_structured(design, seed_arr)
    check_dev = float(
        np.linalg.norm(matrix @ design.stacked - np.eye(design.group.order))
    )
    # With the default seed this is at rounding level; a caller seed can only
    # be as good as its own defining equation.
    allowed = max(LEFT_INVERSE_TOL, 10.0 * np.sqrt(design.ell) * seed_dev)
    if check_dev > allowed:
        raise ValueError(
            f"assembled matrix is not a left inverse (deviation {check_dev:.3e})"
        )
    recon = _recon_vectors(design, matrix)
    return StructuredLeftInverse(seed=seed_arr, matrix=matrix, recon_vectors=recon)


def _recon_vectors(design: SamplingDesign, matrix: np.ndarray) -> np.ndarray:
    lead = matrix[:, np.arange(design.n_systems) * design.ell]  # columns (j, 0)
    return (design.subspace.orbit @ lead).T


def reconstruct(
    design: SamplingDesign, inv: StructuredLeftInverse, samples: SampleSet
) -> np.ndarray:
    """Sampling expansion ``sum_{j,n} sample[j, n] U(tau_n) c_j``."""
    if samples.n_systems != design.n_systems or samples.ell != design.ell:
        raise ValueError("sample set does not match the design layout")
    vals = samples.by_system()
    taus = list(design.transversal.taus)
    per_tau = vals.T @ inv.recon_vectors  # (ell, d): sum_j sample[j, n] c_j
    return np.einsum("nde,ne->d", design.rep.matrices[taus], per_tau)


def interpolation_deviation(design: SamplingDesign, inv: StructuredLeftInverse) -> float:
    """Largest deviation of the samples of the c_j from the Kronecker pattern."""
    n = design.n_systems
    ell = design.ell
    dev = 0.0
    for jp in range(n):
        vals = generalized_samples(design, inv.recon_vectors[jp]).values
        target = np.zeros(n * ell)
        target[jp * ell] = 1.0
        dev = max(dev, float(np.abs(vals - target).max()))
    return dev


def verify_interpolation(design: SamplingDesign, inv: StructuredLeftInverse) -> bool:
    """Basis-case check that ``L_j c_j'(tau_n) = delta_{j,j'} delta_{n,0}``.

    Only defined when the number of systems equals |H| (square stacked matrix).
    """
    if design.n_systems != design.h_order:
        raise ValueError(
            f"interpolation property is a basis-case check; "
            f"N = {design.n_systems} but |H| = {design.h_order}"
        )
    return interpolation_deviation(design, inv) <= INTERPOLATION_TOL


def translated_frame(design: SamplingDesign, inv: StructuredLeftInverse) -> np.ndarray:
    """The reconstruction family ``U(tau_n) c_j`` as rows, j-major."""
    taus = list(design.transversal.taus)
    frame = np.einsum("nde,je->jnd", design.rep.matrices[taus], inv.recon_vectors)
    return frame.reshape(design.n_systems * design.ell, design.subspace.dim)


def frame_bounds(vectors) -> tuple[float, float]:
    """Extreme eigenvalues of the frame operator of a finite vector family.

    Returns (A, B) with ``A ||x||^2 <= sum_k |<v_k, x>|^2 <= B ||x||^2`` for
    every x in the ambient space; A is positive exactly when the family spans
    that space.
    """
    arr = np.asarray(vectors, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise ValueError("need a nonempty list of equal-length vectors")
    dim = arr.shape[1]
    svals = linalg.svd(arr).singular_values
    padded = np.zeros(dim)
    padded[: svals.size] = svals[:dim]
    return float(padded[dim - 1] ** 2), float(svals[0] ** 2)


@dataclass(frozen=True, eq=False)
class CommutantHamiltonian:
    """Hermitian operator commuting with every representation matrix."""

    operator: np.ndarray
    commutator_norm: float


def commutant_hamiltonian(rep: UnitaryRep, operator) -> CommutantHamiltonian:
    """Validate an explicit Hamiltonian against the representation.

    Refused unless Hermitian and commuting with all ``U(g)`` at tolerance.
    """
    h = linalg.as_complex_matrix(operator)
    d = rep.dim
    if h.shape != (d, d):
        raise ValueError(f"operator must be {d}x{d}, got {h.shape}")
    herm_dev = float(np.linalg.norm(h - h.conj().T))
    if herm_dev > HERMITIAN_STRICT_TOL * max(1.0, float(np.linalg.norm(h))):
        raise ValueError(f"operator is not Hermitian (deviation {herm_dev:.3e})")
    comm = rep.matrices @ h - h @ rep.matrices
    norm = float(np.linalg.norm(comm, axis=(1, 2)).max())
    if norm > COMMUTATOR_TOL * d:
        raise ValueError(
            f"operator does not commute with the representation "
            f"(commutator norm {norm:.3e})"
        )
    return CommutantHamiltonian(operator=h, commutator_norm=norm)


def symmetrize_hamiltonian(rep: UnitaryRep, h0) -> CommutantHamiltonian:
    """Group-average a Hermitian operator into the commutant:
    ``H = (1/|G|) sum_g U(g) H0 U(g)*``."""
    h = linalg.as_complex_matrix(h0)
    d = rep.dim
    if h.shape != (d, d):
        raise ValueError(f"operator must be {d}x{d}, got {h.shape}")
    dev = float(np.linalg.norm(h - h.conj().T))
    if dev > HERMITIAN_INPUT_TOL * max(1.0, float(np.linalg.norm(h))):
        raise ValueError(f"input operator is not Hermitian (deviation {dev:.3e})")
    avg = np.einsum("gij,jk,glk->il", rep.matrices, h, rep.matrices.conj()) / rep.group.order
    avg = (avg + avg.conj().T) / 2.0
    return commutant_hamiltonian(rep, avg)


def sample_dynamics(
    design: SamplingDesign,
    inv: StructuredLeftInverse,
    samples: SampleSet,
    hamiltonian: CommutantHamiltonian,
    t: float,
) -> np.ndarray:
    """Evolved-state expansion from initial samples:
    ``sum_{j,n} sample[j, n] U(tau_n) exp(-i t H) c_j``."""
    d = design.subspace.dim
    if hamiltonian.commutator_norm > COMMUTATOR_TOL * d:
        raise ValueError(
            f"Hamiltonian does not commute with the representation "
            f"(commutator norm {hamiltonian.commutator_norm:.3e})"
        )
    prop = linalg.hermitian_propagator(hamiltonian.operator, t)
    evolved = StructuredLeftInverse(
        seed=inv.seed,
        matrix=inv.matrix,
        recon_vectors=(prop @ inv.recon_vectors.T).T,
    )
    return reconstruct(design, evolved, samples)


def evaluate_theorem_conditions(design: SamplingDesign, rng: np.random.Generator) -> dict:
    """Evaluate the four equivalent recoverability conditions independently.

    1. the stacked matrix has full column rank |G|;
    2. a seed block solving ``seed @ stacked = [I | 0]`` exists (checked on
       the leading rows of the pseudoinverse, which solve it iff solvable);
    3. the structured expansion reconstructs a random probe basis exactly;
    4. the translated family ``{U(tau_n) c_j}`` spans the orbit subspace.

    All four are computed even for deficient designs, using the candidate
    seed without validation, so that agreement can be asserted both ways.
    """
    group = design.group
    h = design.h_order
    pinv = linalg.pseudoinverse(design.stacked)
    seed = pinv[:h, :]

    target = np.zeros((h, group.order), dtype=np.complex128)
    target[:, :h] = np.eye(h)
    seed_ok = float(np.linalg.norm(seed @ design.stacked - target)) <= SEED_EQUATION_TOL

    matrix = _assemble_structured(design, seed)
    candidate = StructuredLeftInverse(
        seed=seed, matrix=matrix, recon_vectors=_recon_vectors(design, matrix)
    )

    alphas = rng.standard_normal((group.order, group.order)) + 1j * rng.standard_normal(
        (group.order, group.order)
    )
    recon_ok = True
    for alpha in alphas:
        x = synthesize(design.subspace, alpha)
        xhat = reconstruct(design, candidate, generalized_samples(design, x))
        if np.linalg.norm(xhat - x) > RECONSTRUCTION_RTOL * np.linalg.norm(x):
            recon_ok = False
            break

    frame = translated_frame(design, candidate)
    frame_ok = linalg.matrix_rank(frame) == group.order

    return {
        "rank_full": bool(design.recoverable),
        "seed_equation": bool(seed_ok),
        "reconstruction": bool(recon_ok),
        "frame_spans": bool(frame_ok),
    }
