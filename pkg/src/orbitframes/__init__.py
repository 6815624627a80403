"""Sampling and perfect reconstruction on group-orbit subspaces.

Build a finite group, represent it unitarily, pick a generator whose orbit
spans the subspace of interest, sample states against translated system
vectors along an Abelian subgroup, and reconstruct them through structured
left inverses whose columns are group translates of a small seed block.
"""

from .covariance import (
    CyclicSubspace,
    DependentOrbitError,
    analyze,
    auto_covariance,
    build_cyclic_subspace,
    check_stationarity,
    covariance_sequence,
    cross_covariance,
    synthesize,
)
from .groups import (
    CanonicalOrdering,
    FiniteGroup,
    GroupStructureError,
    Subgroup,
    Transversal,
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
)
from .representations import (
    RepresentationError,
    UnitaryRep,
    conjugate_representation,
    cyclic_shift_representation,
    from_matrices,
    regular_representation,
)
from .sampling import (
    CommutantHamiltonian,
    SampleSet,
    SamplingDesign,
    StructuredLeftInverse,
    UnrecoverableDesignError,
    build_design,
    check_recoverability,
    commutant_hamiltonian,
    evaluate_theorem_conditions,
    frame_bounds,
    frame_vectors,
    generalized_samples,
    left_inverse_family,
    moore_penrose_left_inverse,
    reconstruct,
    sample_dynamics,
    structured_left_inverse,
    symmetrize_hamiltonian,
    translated_frame,
    verify_interpolation,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
