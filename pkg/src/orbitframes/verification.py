"""Design verification suite and machine-readable reports.

``run_verification`` exercises every contract of a built design: algebraic
axioms, covariance symmetries, shifting property, left-inverse structure,
dual-frame identities, reconstruction trials, the interpolation pattern in
the basis case, and the four-way recoverability equivalence.  Results land in
a :class:`Report` whose JSON form is byte-stable for a fixed configuration
and seed (timing excluded).
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .config import DesignBundle
from .covariance import analyze, check_stationarity, covariance_sequence, synthesize
from .groups import left_translate
from .sampling import (
    evaluate_theorem_conditions,
    frame_bounds,
    frame_vectors,
    generalized_samples,
    interpolation_deviation,
    moore_penrose_left_inverse,
    reconstruct,
    structured_left_inverse,
    translated_frame,
)
from .tolerances import (
    REP_IDENTITY_TOL,
    REP_PRODUCT_TOL,
    REP_UNITARY_TOL,
    Tolerances,
)


def _json_default(obj):
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    raise TypeError(f"not JSON serializable: {type(obj)}")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class Report:
    design_id: str
    summary: dict
    seed: int
    trials: int
    rank: int
    sigma_min: float
    recoverable: bool
    ill_conditioned: bool
    expect_unrecoverable: bool
    theorem: dict
    checks: list
    residuals: list
    frame_lower: float | None
    frame_upper: float | None
    interpolation: bool | None
    passed: bool
    elapsed_s: float

    def to_dict(self, include_timing: bool = True) -> dict:
        doc = {
            "design_id": self.design_id,
            "summary": self.summary,
            "seed": self.seed,
            "trials": self.trials,
            "rank": self.rank,
            "sigma_min": self.sigma_min,
            "recoverable": self.recoverable,
            "ill_conditioned": self.ill_conditioned,
            "expect_unrecoverable": self.expect_unrecoverable,
            "theorem": self.theorem,
            "checks": [c.to_dict() for c in self.checks],
            "residuals": self.residuals,
            "frame_bounds": (
                None
                if self.frame_lower is None
                else {"lower": self.frame_lower, "upper": self.frame_upper}
            ),
            "interpolation": self.interpolation,
            "passed": self.passed,
        }
        if include_timing:
            doc["timing"] = {"elapsed_s": self.elapsed_s}
        return doc

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(
            self.to_dict(include_timing), indent=2, sort_keys=True, default=_json_default
        )

    def trial_rows(self) -> list[dict]:
        """CSV-ready rows: one per reconstruction trial."""
        return [
            {
                "design_id": self.design_id,
                "trial": i,
                "residual": r,
                "sigma_min": self.sigma_min,
                "frame_lower": self.frame_lower,
                "frame_upper": self.frame_upper,
            }
            for i, r in enumerate(self.residuals)
        ]


def _random_coeffs(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def run_verification(
    bundle: DesignBundle,
    trials: int = 20,
    seed: int = 0,
    expect_unrecoverable: bool = False,
) -> Report:
    """Run every check on a built design and collect a report."""
    t0 = time.perf_counter()
    tol: Tolerances = bundle.config.tolerances
    design = bundle.design
    sub = bundle.subspace
    rep = bundle.rep
    group = bundle.group
    rng = np.random.default_rng(seed)
    checks: list[CheckResult] = []

    def record(name: str, passed: bool, **detail) -> None:
        checks.append(CheckResult(name=name, passed=bool(passed), detail=detail))

    # Construction already validated the axioms; re-measure the deviations.
    eye = np.eye(rep.dim)
    herm = rep.matrices.conj().transpose(0, 2, 1)
    unitary_dev = float(np.linalg.norm(herm @ rep.matrices - eye, axis=(1, 2)).max())
    hom_dev = 0.0
    for g in group.elements():
        hom_dev = max(
            hom_dev,
            float(
                np.linalg.norm(
                    rep.matrices[g] @ rep.matrices - rep.matrices[group.cayley[g]],
                    axis=(1, 2),
                ).max()
            ),
        )
    id_dev = float(np.abs(rep.matrices[group.identity] - eye).max())
    record(
        "representation_axioms",
        id_dev <= REP_IDENTITY_TOL
        and hom_dev <= REP_PRODUCT_TOL * rep.dim
        and unitary_dev <= REP_UNITARY_TOL * rep.dim,
        identity_dev=id_dev,
        homomorphism_dev=hom_dev,
        unitarity_dev=unitary_dev,
    )

    gram_dev = float(np.abs(sub.orbit.conj().T @ sub.orbit - sub.gram).max())
    record("orbit_gram_consistency", gram_dev <= 1e-10, deviation=gram_dev)

    orbit_by_element = rep.matrices @ sub.generator
    record(
        "orbit_stationarity",
        check_stationarity(group, orbit_by_element, tol.stationarity_tol),
    )

    record(
        "independence_agreement",
        (sub.orbit_rank == group.order) == sub.independent,
        orbit_rank=sub.orbit_rank,
        gram_sigma_min=sub.gram_sigma_min,
    )

    shift_dev = 0.0
    for _ in range(trials):
        alpha = _random_coeffs(rng, group.order)
        x = synthesize(sub, alpha)
        for s in group.elements():
            lhs = synthesize(sub, left_translate(group, s, alpha, sub.ordering))
            rhs = rep.matrices[s] @ x
            shift_dev = max(
                shift_dev, float(np.linalg.norm(lhs - rhs) / np.linalg.norm(alpha))
            )
    record("shifting_property", shift_dev <= tol.shifting_rtol, deviation=shift_dev)

    sym_dev = 0.0
    for _ in range(trials):
        a = _random_coeffs(rng, rep.dim)
        b = _random_coeffs(rng, rep.dim)
        r_ab = covariance_sequence(rep, a, b)
        r_ba = covariance_sequence(rep, b, a)
        sym_dev = max(
            sym_dev, float(np.abs(r_ab - r_ba[group.inverses].conj()).max())
        )
    record(
        "cross_covariance_symmetry",
        sym_dev <= tol.cross_covariance_tol,
        deviation=sym_dev,
    )

    h_order = design.h_order
    grid = design.blocks.reshape(design.n_systems, design.ell, design.ell, h_order)
    record(
        "block_symmetry",
        bool(np.array_equal(grid, grid.transpose(0, 2, 1, 3))),
    )

    sample_dev = 0.0
    for _ in range(trials):
        alpha = _random_coeffs(rng, group.order)
        measured = generalized_samples(design, synthesize(sub, alpha)).values
        sample_dev = max(
            sample_dev, float(np.abs(measured - design.stacked @ alpha).max())
        )
    record("samples_matrix_consistency", sample_dev <= 1e-10, deviation=sample_dev)

    record(
        "recoverability",
        design.recoverable != expect_unrecoverable,
        rank=design.rank,
        sigma_min=design.sigma_min,
        rank_cutoff=design.rank_cutoff,
        recoverable=design.recoverable,
    )

    theorem = evaluate_theorem_conditions(design, np.random.default_rng([seed, 999]))
    agreement = len(set(theorem.values())) == 1
    record("theorem_equivalence", agreement, **theorem)

    residuals: list[float] = []
    frame_lower = frame_upper = None
    interpolation = None

    if design.recoverable:
        pinv = moore_penrose_left_inverse(design)
        pinv_dev = float(np.linalg.norm(pinv @ design.stacked - np.eye(group.order)))
        record(
            "moore_penrose_left_inverse",
            pinv_dev <= tol.left_inverse_tol,
            deviation=pinv_dev,
        )

        inv = structured_left_inverse(design)
        s_dev = float(
            np.linalg.norm(inv.matrix @ design.stacked - np.eye(group.order))
        )
        perm_exact = True
        for j in range(design.n_systems):
            base = inv.matrix[:, j * design.ell]
            for n in range(design.ell):
                translated = left_translate(
                    group, design.transversal.taus[n], base, design.ordering
                )
                if not np.array_equal(inv.matrix[:, j * design.ell + n], translated):
                    perm_exact = False
        record(
            "structured_left_inverse",
            s_dev <= tol.left_inverse_tol and perm_exact,
            deviation=s_dev,
            columns_are_translates=perm_exact,
        )

        rows = frame_vectors(design)
        dual_dev = 0.0
        for _ in range(trials):
            alpha = _random_coeffs(rng, group.order)
            coeffs = rows.conj() @ alpha  # <row, alpha> per sample
            for dual in (pinv, inv.matrix):
                resyn = dual @ coeffs
                dual_dev = max(dual_dev, float(np.linalg.norm(resyn - alpha)))
        record("dual_frame_identity", dual_dev <= tol.dual_frame_tol, deviation=dual_dev)

        coeff_dev = 0.0
        for t in range(trials):
            trial_rng = np.random.default_rng([seed, t])
            alpha = _random_coeffs(trial_rng, group.order)
            x = synthesize(sub, alpha)
            samples = generalized_samples(design, x)
            xhat = reconstruct(design, inv, samples)
            residuals.append(float(np.linalg.norm(xhat - x) / np.linalg.norm(x)))
            via_structured = inv.matrix @ samples.values
            via_pinv = pinv @ samples.values
            via_analysis = analyze(sub, x)
            coeff_dev = max(
                coeff_dev,
                float(np.linalg.norm(via_structured - via_analysis)),
                float(np.linalg.norm(via_pinv - via_analysis)),
            )
        record(
            "reconstruction",
            max(residuals) <= tol.reconstruction_rtol,
            max_residual=max(residuals),
        )
        record("coefficient_agreement", coeff_dev <= tol.dual_frame_tol, deviation=coeff_dev)

        frame_lower, frame_upper = frame_bounds(translated_frame(design, inv))
        record(
            "frame_bounds",
            frame_lower > 0.0,
            lower=frame_lower,
            upper=frame_upper,
        )

        if design.n_systems == h_order:
            interp_dev = interpolation_deviation(design, inv)
            interpolation = interp_dev <= tol.interpolation_tol
            record("interpolation", interpolation, deviation=interp_dev)

    passed = all(c.passed for c in checks)
    return Report(
        design_id=bundle.design_id,
        summary={
            "group_order": group.order,
            "dim": rep.dim,
            "ell": design.ell,
            "h_order": h_order,
            "n_systems": design.n_systems,
        },
        seed=seed,
        trials=trials,
        rank=design.rank,
        sigma_min=design.sigma_min,
        recoverable=design.recoverable,
        ill_conditioned=design.ill_conditioned,
        expect_unrecoverable=expect_unrecoverable,
        theorem=theorem,
        checks=checks,
        residuals=residuals,
        frame_lower=frame_lower,
        frame_upper=frame_upper,
        interpolation=interpolation,
        passed=passed,
        elapsed_s=time.perf_counter() - t0,
    )
