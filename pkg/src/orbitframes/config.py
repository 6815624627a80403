"""JSON design configurations and the staged build pipeline.

A design document names a group, a representation, a generator, the system
vectors, and the sampling subgroup K (by generators).  Complex scalars are
``[re, im]`` pairs.  Example::

    {
      "group": {"kind": "cyclic", "m": 6},
      "representation": {"kind": "cyclic_shift"},
      "generator": [[1,0],[0,0],[0,0],[0,0],[0,0],[0,0]],
      "systems": [[[1,0],[0,0],[0,0],[0,0],[0,0],[0,0]],
                  [[0,0],[1,0],[0,0],[0,0],[0,0],[0,0]]],
      "subgroup_k": [2],
      "subgroup_h": [3],
      "seed": 7
    }

``subgroup_h`` is optional; when absent a complement of K is searched for.
Failures carry the pipeline stage they occurred in (parse, group,
representation, subspace, design, inverse, reconstruct).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .covariance import CyclicSubspace, build_cyclic_subspace
from .groups import (
    CanonicalOrdering,
    FiniteGroup,
    Subgroup,
    Transversal,
    build_transversal,
    canonical_ordering,
    find_complement,
    from_cayley_table,
    make_cyclic,
    make_dihedral,
    subgroup_closure,
)
from .representations import (
    UnitaryRep,
    cyclic_shift_representation,
    from_matrices,
    regular_representation,
)
from .sampling import SamplingDesign, build_design
from .tolerances import Tolerances

STAGES = ("parse", "group", "representation", "subspace", "design", "inverse", "reconstruct")


class ConfigError(Exception):
    """Pipeline failure tagged with the stage it happened in."""

    def __init__(self, stage: str, message: str):
        assert stage in STAGES
        self.stage = stage
        super().__init__(f"[{stage}] {message}")


def parse_complex_scalar(obj) -> complex:
    if not (isinstance(obj, (list, tuple)) and len(obj) == 2):
        raise ConfigError("parse", f"complex scalars are [re, im] pairs, got {obj!r}")
    return complex(float(obj[0]), float(obj[1]))


def parse_complex_vector(obj) -> np.ndarray:
    if not isinstance(obj, (list, tuple)):
        raise ConfigError("parse", "complex vectors are lists of [re, im] pairs")
    return np.array([parse_complex_scalar(entry) for entry in obj], dtype=np.complex128)


def parse_complex_matrix(obj) -> np.ndarray:
    if not isinstance(obj, (list, tuple)) or not obj:
        raise ConfigError("parse", "complex matrices are nonempty lists of rows")
    rows = [parse_complex_vector(row) for row in obj]
    if len({row.shape for row in rows}) != 1:
        raise ConfigError("parse", "matrix rows have inconsistent lengths")
    return np.stack(rows)


def encode_complex_vector(vec) -> list:
    arr = np.asarray(vec, dtype=np.complex128)
    return [[float(z.real), float(z.imag)] for z in arr]


def encode_complex_matrix(mat) -> list:
    return [encode_complex_vector(row) for row in np.asarray(mat, dtype=np.complex128)]


def group_from_spec(spec: dict) -> FiniteGroup:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError("group", "group spec needs a 'kind' field")
    kind = spec["kind"]
    try:
        if kind == "cyclic":
            return make_cyclic(int(spec["m"]))
        if kind == "dihedral":
            return make_dihedral(int(spec["m"]))
        if kind == "cayley":
            return from_cayley_table(spec["table"], spec.get("labels"))
    except ConfigError:
        raise
    except (KeyError, ValueError) as exc:
        raise ConfigError("group", str(exc)) from exc
    raise ConfigError("group", f"unknown group kind {kind!r}")


def representation_from_spec(spec: dict, group: FiniteGroup) -> UnitaryRep:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError("representation", "representation spec needs a 'kind' field")
    kind = spec["kind"]
    try:
        if kind == "regular":
            return regular_representation(group)
        if kind == "cyclic_shift":
            rep = cyclic_shift_representation(group.order)
            if not np.array_equal(rep.group.cayley, group.cayley):
                raise ValueError("cyclic_shift representation requires a cyclic group")
            return rep
        if kind == "explicit":
            mats = np.stack([parse_complex_matrix(m) for m in spec["matrices"]])
            return from_matrices(group, mats)
    except ConfigError as exc:
        raise ConfigError("representation", str(exc)) from exc
    except (KeyError, ValueError) as exc:
        raise ConfigError("representation", str(exc)) from exc
    raise ConfigError("representation", f"unknown representation kind {kind!r}")


def hamiltonian_from_spec(
    spec: Optional[dict], rep: UnitaryRep, default_seed: int
):
    """Build a commutant Hamiltonian: explicit matrix or symmetrized random."""
    from .sampling import commutant_hamiltonian, symmetrize_hamiltonian

    spec = spec or {"kind": "symmetrized_random"}
    kind = spec.get("kind")
    try:
        if kind == "explicit":
            return commutant_hamiltonian(rep, parse_complex_matrix(spec["matrix"]))
        if kind == "symmetrized_random":
            seed = int(spec.get("seed", default_seed))
            rng = np.random.default_rng(seed)
            z = rng.standard_normal((rep.dim, rep.dim)) + 1j * rng.standard_normal(
                (rep.dim, rep.dim)
            )
            return symmetrize_hamiltonian(rep, (z + z.conj().T) / 2.0)
    except ConfigError as exc:
        raise ConfigError("design", str(exc)) from exc
    except (KeyError, ValueError) as exc:
        raise ConfigError("design", str(exc)) from exc
    raise ConfigError("design", f"unknown hamiltonian kind {kind!r}")


@dataclass(frozen=True)
class DesignConfig:
    group_spec: dict
    representation_spec: dict
    generator: np.ndarray
    systems: tuple
    subgroup_k: tuple[int, ...]
    subgroup_h: Optional[tuple[int, ...]]
    seed: int = 0
    tolerances: Tolerances = field(default_factory=Tolerances)
    hamiltonian_spec: Optional[dict] = None

    @classmethod
    def from_dict(cls, doc: dict) -> "DesignConfig":
        if not isinstance(doc, dict):
            raise ConfigError("parse", "configuration must be a JSON object")
        missing = [k for k in ("group", "representation", "generator", "systems", "subgroup_k") if k not in doc]
        if missing:
            raise ConfigError("parse", f"missing required fields: {missing}")
        systems = doc["systems"]
        if not isinstance(systems, list):
            raise ConfigError("parse", "'systems' must be a list of vectors")
        try:
            tolerances = Tolerances.from_dict(doc.get("tolerances"))
        except ValueError as exc:
            raise ConfigError("parse", str(exc)) from exc
        h = doc.get("subgroup_h")
        return cls(
            group_spec=doc["group"],
            representation_spec=doc["representation"],
            generator=parse_complex_vector(doc["generator"]),
            systems=tuple(parse_complex_vector(v) for v in systems),
            subgroup_k=tuple(int(x) for x in doc["subgroup_k"]),
            subgroup_h=tuple(int(x) for x in h) if h is not None else None,
            seed=int(doc.get("seed", 0)),
            hamiltonian_spec=doc.get("hamiltonian"),
        )

    @classmethod
    def from_json_file(cls, path) -> "DesignConfig":
        try:
            doc = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError("parse", f"cannot read configuration: {exc}") from exc
        return cls.from_dict(doc)


@dataclass(frozen=True)
class DesignBundle:
    """Everything the pipeline built from one configuration."""

    config: DesignConfig
    group: FiniteGroup
    rep: UnitaryRep
    subgroup_k: Subgroup
    subgroup_h: Subgroup
    transversal: Transversal
    ordering: CanonicalOrdering
    subspace: CyclicSubspace
    design: SamplingDesign
    design_id: str


def build_bundle(config: DesignConfig) -> DesignBundle:
    """Run the staged pipeline from a parsed configuration to a design."""
    group = group_from_spec(config.group_spec)
    try:
        k = subgroup_closure(group, config.subgroup_k)
        if config.subgroup_h is not None:
            h = subgroup_closure(group, config.subgroup_h)
        else:
            found = find_complement(group, k)
            if found is None:
                raise ValueError("sampling subgroup K has no complement")
            h = found
        transversal = build_transversal(group, k, h)
        ordering = canonical_ordering(group, transversal)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError("group", str(exc)) from exc

    rep = representation_from_spec(config.representation_spec, group)

    try:
        subspace = build_cyclic_subspace(rep, config.generator, ordering)
        if not subspace.independent:
            raise ValueError(
                f"generator orbit is linearly dependent "
                f"(gram sigma_min {subspace.gram_sigma_min:.3e})"
            )
    except ValueError as exc:
        raise ConfigError("subspace", str(exc)) from exc

    try:
        design = build_design(subspace, np.stack(config.systems), transversal)
    except ValueError as exc:
        raise ConfigError("design", str(exc)) from exc

    kind = config.group_spec.get("kind", "group")
    design_id = (
        f"{kind}{group.order}-l{transversal.ell}-h{h.order}-n{design.n_systems}"
    )
    return DesignBundle(
        config=config,
        group=group,
        rep=rep,
        subgroup_k=k,
        subgroup_h=h,
        transversal=transversal,
        ordering=ordering,
        subspace=subspace,
        design=design,
        design_id=design_id,
    )
