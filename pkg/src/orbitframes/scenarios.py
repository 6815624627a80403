"""Ready-made sampling scenarios on cyclic and dihedral groups.

The cyclic scenario is multichannel decimation of periodic signals: the
shift representation on length-M signals, sampling every r-th shift through N
filters.  Each generalized sample equals a periodic convolution value, which
gives an independent cross-check of the sample computation.

The dihedral scenario samples at the two-element subgroup generated by the
basic reflection, with the rotation subgroup as complement.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .config import ConfigError, DesignBundle, DesignConfig
from .covariance import build_cyclic_subspace
from .groups import (
    build_transversal,
    canonical_ordering,
    find_complement,
    make_dihedral,
    subgroup_closure,
)
from .representations import cyclic_shift_representation, regular_representation
from .sampling import SamplingDesign, build_design, generalized_samples


def _bundle(config, group, rep, k, h, design_id) -> DesignBundle:
    transversal = build_transversal(group, k, h)
    ordering = canonical_ordering(group, transversal)
    subspace = build_cyclic_subspace(rep, config.generator, ordering)
    design = build_design(subspace, np.stack(config.systems), transversal)
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


def delta(dim: int, at: int) -> np.ndarray:
    vec = np.zeros(dim, dtype=np.complex128)
    vec[at] = 1.0
    return vec


def cyclic_scenario(
    m: int,
    r: int,
    systems: Optional[Sequence[np.ndarray]] = None,
    n_systems: Optional[int] = None,
) -> DesignBundle:
    """Periodic-signal sampling: shift representation on length-m signals,
    sampling set {0, r, 2r, ...}.

    Requires ``r | m`` and ``gcd(r, m/r) == 1`` so the sampling subgroup has a
    complement.  Default systems are the first N basis deltas with
    ``N = r`` (the basis case).
    """
    if m < 1 or r < 1 or m % r != 0:
        raise ConfigError("group", f"sampling period {r} must divide the length {m}")
    rep = cyclic_shift_representation(m)
    group = rep.group
    k = subgroup_closure(group, [r % m])
    h = find_complement(group, k)
    if h is None:
        raise ConfigError(
            "group",
            f"sampling subgroup generated by {r} has no complement in the cyclic "
            f"group of order {m} (needs gcd(r, m/r) = 1)",
        )
    if systems is None:
        n = n_systems if n_systems is not None else r
        systems = [delta(m, j) for j in range(n)]
    systems = tuple(np.asarray(b, dtype=np.complex128) for b in systems)
    config = DesignConfig(
        group_spec={"kind": "cyclic", "m": m},
        representation_spec={"kind": "cyclic_shift"},
        generator=delta(m, 0),
        systems=systems,
        subgroup_k=(r % m,),
        subgroup_h=h.elements,
    )
    return _bundle(config, group, rep, k, h, f"cyclic{m}-r{r}-n{len(systems)}")


def periodic_convolution(x: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Circular convolution ``(x * h)(k) = sum_m x(m) h(k - m)``."""
    x = np.asarray(x, dtype=np.complex128)
    h = np.asarray(h, dtype=np.complex128)
    m = x.shape[0]
    k_idx, m_idx = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    return (x[None, :] * h[(k_idx - m_idx) % m]).sum(axis=1)


def convolution_samples(design: SamplingDesign, x: np.ndarray) -> np.ndarray:
    """Samples of a periodic signal computed as decimated convolutions.

    Filter j is ``h_j(k) = conj(b_j(-k))``; sample (j, n) is the convolution
    ``(x * h_j)`` evaluated at the n-th sampling point.  Agrees entrywise with
    :func:`orbitframes.sampling.generalized_samples` on cyclic scenarios.
    """
    m = design.group.order
    taus = np.array(design.transversal.taus)
    out = np.empty(design.n_systems * design.ell, dtype=np.complex128)
    for j in range(design.n_systems):
        filt = np.conj(design.systems[j][(-np.arange(m)) % m])
        conv = periodic_convolution(x, filt)
        out[j * design.ell : (j + 1) * design.ell] = conv[taus]
    return out


def dihedral_scenario(
    m: int,
    systems: Optional[Sequence[np.ndarray]] = None,
    n_systems: Optional[int] = None,
    seed: Optional[int] = None,
) -> DesignBundle:
    """Regular-representation sampling on the dihedral group of order 2m.

    Sampling set is {e, t} (t the basic reflection), complement the rotation
    subgroup, generator the identity-indicator state.  Default systems are
    deltas at the first N rotations with ``N = m``; pass ``seed`` to use
    random systems instead.
    """
    if m < 2:
        raise ConfigError("group", f"dihedral parameter must be at least 2, got {m}")
    group = make_dihedral(m)
    rep = regular_representation(group)
    k = subgroup_closure(group, [m])      # {e, t}
    h = subgroup_closure(group, [1])      # rotations
    dim = group.order
    if systems is None:
        n = n_systems if n_systems is not None else m
        if seed is None:
            systems = [delta(dim, j % dim) for j in range(n)]
        else:
            rng = np.random.default_rng(seed)
            systems = list(rng.standard_normal((n, dim)) + 1j * rng.standard_normal((n, dim)))
    systems = tuple(np.asarray(b, dtype=np.complex128) for b in systems)
    config = DesignConfig(
        group_spec={"kind": "dihedral", "m": m},
        representation_spec={"kind": "regular"},
        generator=delta(dim, group.identity),
        systems=systems,
        subgroup_k=(m,),
        subgroup_h=h.elements,
    )
    return _bundle(config, group, rep, k, h, f"dihedral{m}-n{len(systems)}")


def sample_agreement_deviation(design: SamplingDesign, x: np.ndarray) -> float:
    """Entrywise gap between inner-product samples and convolution samples."""
    direct = generalized_samples(design, x).values
    via_conv = convolution_samples(design, x)
    return float(np.abs(direct - via_conv).max())
