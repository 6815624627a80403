"""Command-line front end.

Subcommands::

    group          inspect a group: order, cosets, complements, transversals
    verify         run the full check suite on a design configuration
    reconstruct    sample a state and rebuild it, reporting the residual
    demo-cyclic    periodic-signal scenario with a convolution cross-check
    demo-dihedral  dihedral-group scenario with the block structure report
    dynamics       evolve a state under a commuting Hamiltonian from samples

Exit status: 0 all checks pass, 1 check failure, 2 configuration error,
3 unrecoverable design where recoverability was required.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from .config import (
    ConfigError,
    DesignConfig,
    build_bundle,
    encode_complex_matrix,
    encode_complex_vector,
    group_from_spec,
    hamiltonian_from_spec,
    parse_complex_vector,
)
from .groups import (
    build_transversal,
    canonical_ordering,
    find_complements,
    left_cosets,
    subgroup_closure,
)
from .linalg import hermitian_propagator
from .sampling import (
    UnrecoverableDesignError,
    generalized_samples,
    reconstruct,
    sample_dynamics,
    structured_left_inverse,
)
from .scenarios import cyclic_scenario, dihedral_scenario, sample_agreement_deviation
from .verification import _json_default, run_verification

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_CONFIG_ERROR = 2
EXIT_UNRECOVERABLE = 3


def _parse_gens(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip() != "")
    except ValueError as exc:
        raise ConfigError("parse", f"generator lists are comma-separated ints: {text!r}") from exc


def _emit(doc, args) -> None:
    if getattr(args, "format", "json") == "csv" and "rows" in doc:
        buf = io.StringIO()
        rows = doc["rows"]
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()) if rows else ["empty"])
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        text = json.dumps(doc, indent=2, sort_keys=True, default=_json_default) + "\n"
    sys.stdout.write(text)
    if getattr(args, "out", None):
        Path(args.out).write_text(text)


def cmd_group(args) -> int:
    if args.config:
        spec = json.loads(Path(args.config).read_text())
    elif args.kind:
        if args.m is None:
            raise ConfigError("parse", "--kind needs --m")
        spec = {"kind": args.kind, "m": args.m}
    else:
        raise ConfigError("parse", "give either --config or --kind/--m")
    group = group_from_spec(spec)
    doc = {
        "order": group.order,
        "abelian": group.is_abelian,
        "identity": group.identity,
        "labels": list(group.labels) if group.labels else None,
    }
    try:
        if args.cosets is not None:
            sub = subgroup_closure(group, _parse_gens(args.cosets))
            doc["cosets"] = [list(c) for c in left_cosets(group, sub)]
        if args.complement is not None:
            k = subgroup_closure(group, _parse_gens(args.complement))
            found = find_complements(group, k)
            doc["subgroup_k"] = list(k.elements)
            if args.all_complements:
                doc["complements"] = [list(h.elements) for h in found]
            else:
                doc["complement"] = list(found[0].elements) if found else None
        if args.transversal is not None:
            k_text, _, h_text = args.transversal.partition(":")
            k = subgroup_closure(group, _parse_gens(k_text))
            h = subgroup_closure(group, _parse_gens(h_text))
            t = build_transversal(group, k, h)
            doc["taus"] = list(t.taus)
            doc["canonical_order"] = [int(x) for x in canonical_ordering(group, t).order]
    except ValueError as exc:
        raise ConfigError("group", str(exc)) from exc
    _emit(doc, args)
    return EXIT_OK


def _load_config(args) -> DesignConfig:
    if not args.config:
        raise ConfigError("parse", "--config is required for this command")
    return DesignConfig.from_json_file(args.config)


def cmd_verify(args) -> int:
    config = _load_config(args)
    bundle = build_bundle(config)
    seed = args.seed if args.seed is not None else config.seed
    report = run_verification(
        bundle,
        trials=args.trials,
        seed=seed,
        expect_unrecoverable=args.expect_unrecoverable,
    )
    doc = report.to_dict()
    doc["rows"] = report.trial_rows()
    _emit(doc, args)
    if not bundle.design.recoverable and not args.expect_unrecoverable:
        return EXIT_UNRECOVERABLE
    return EXIT_OK if report.passed else EXIT_CHECK_FAILURE


def cmd_reconstruct(args) -> int:
    config = _load_config(args)
    bundle = build_bundle(config)
    try:
        state = parse_complex_vector(json.loads(Path(args.state).read_text()))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError("parse", f"cannot read state vector: {exc}") from exc
    if state.shape != (bundle.rep.dim,):
        raise ConfigError(
            "reconstruct",
            f"state has dimension {state.shape[0]}, design needs {bundle.rep.dim}",
        )
    design = bundle.design
    if not design.recoverable:
        sys.stderr.write(
            f"error [inverse]: design rank {design.rank} < {bundle.group.order}\n"
        )
        return EXIT_UNRECOVERABLE
    inv = structured_left_inverse(design)
    samples = generalized_samples(design, state)
    rebuilt = reconstruct(design, inv, samples)
    residual = float(np.linalg.norm(rebuilt - state))
    doc = {
        "design_id": bundle.design_id,
        "samples": encode_complex_vector(samples.values),
        "recon_vectors": encode_complex_matrix(inv.recon_vectors),
        "reconstruction": encode_complex_vector(rebuilt),
        "residual": residual,
        "rows": [
            {
                "design_id": bundle.design_id,
                "trial": 0,
                "residual": residual,
                "sigma_min": design.sigma_min,
                "frame_lower": None,
                "frame_upper": None,
            }
        ],
    }
    _emit(doc, args)
    return EXIT_OK


def _demo_report(bundle, seed: int, trials: int) -> dict:
    report = run_verification(bundle, trials=trials, seed=seed)
    doc = report.to_dict()
    doc["rows"] = report.trial_rows()
    return doc


def cmd_demo_cyclic(args) -> int:
    systems = None
    if args.systems:
        raw = json.loads(Path(args.systems).read_text())
        systems = [parse_complex_vector(v) for v in raw]
    bundle = cyclic_scenario(args.m, args.r, systems=systems, n_systems=args.n)
    if not bundle.design.recoverable:
        sys.stderr.write(
            f"error [inverse]: design rank {bundle.design.rank} < {bundle.group.order}\n"
        )
        return EXIT_UNRECOVERABLE
    rng = np.random.default_rng(args.seed)
    agreement = 0.0
    for _ in range(args.trials):
        x = rng.standard_normal(args.m) + 1j * rng.standard_normal(args.m)
        agreement = max(agreement, sample_agreement_deviation(bundle.design, x))
    doc = _demo_report(bundle, args.seed, args.trials)
    doc["convolution_agreement"] = agreement
    inv = structured_left_inverse(bundle.design)
    doc["recon_vectors"] = encode_complex_matrix(inv.recon_vectors)
    _emit(doc, args)
    ok = doc["passed"] and agreement <= 1e-10
    return EXIT_OK if ok else EXIT_CHECK_FAILURE


def cmd_demo_dihedral(args) -> int:
    bundle = dihedral_scenario(
        args.m, n_systems=args.n, seed=args.seed if args.random else None
    )
    if not bundle.design.recoverable:
        sys.stderr.write(
            f"error [inverse]: design rank {bundle.design.rank} < {bundle.group.order}\n"
        )
        return EXIT_UNRECOVERABLE
    doc = _demo_report(bundle, args.seed, args.trials)
    doc["blocks"] = [encode_complex_matrix(b) for b in bundle.design.blocks]
    _emit(doc, args)
    return EXIT_OK if doc["passed"] else EXIT_CHECK_FAILURE


def cmd_dynamics(args) -> int:
    config = _load_config(args)
    bundle = build_bundle(config)
    design = bundle.design
    if not design.recoverable:
        sys.stderr.write(
            f"error [inverse]: design rank {design.rank} < {bundle.group.order}\n"
        )
        return EXIT_UNRECOVERABLE
    seed = args.seed if args.seed is not None else config.seed
    try:
        ham = hamiltonian_from_spec(config.hamiltonian_spec, bundle.rep, seed)
    except ValueError as exc:
        raise ConfigError("design", str(exc)) from exc
    times = [float(tok) for tok in args.times.split(",") if tok.strip() != ""]
    inv = structured_left_inverse(design)
    rng = np.random.default_rng(seed)
    alpha = rng.standard_normal(bundle.group.order) + 1j * rng.standard_normal(
        bundle.group.order
    )
    from .covariance import synthesize

    x = synthesize(bundle.subspace, alpha)
    samples = generalized_samples(design, x)
    residuals = []
    for t in times:
        evolved = sample_dynamics(design, inv, samples, ham, t)
        direct = hermitian_propagator(ham.operator, t) @ x
        residuals.append(float(np.linalg.norm(evolved - direct) / np.linalg.norm(x)))
    doc = {
        "design_id": bundle.design_id,
        "times": times,
        "residuals": residuals,
        "max_residual": max(residuals),
        "commutator_norm": ham.commutator_norm,
        "rows": [
            {
                "design_id": bundle.design_id,
                "trial": i,
                "residual": r,
                "sigma_min": design.sigma_min,
                "frame_lower": None,
                "frame_upper": None,
            }
            for i, r in enumerate(residuals)
        ],
    }
    _emit(doc, args)
    from .tolerances import DYNAMICS_RTOL

    return EXIT_OK if max(residuals) <= DYNAMICS_RTOL else EXIT_CHECK_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitframes",
        description="Sampling and reconstruction on group-orbit subspaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config=True):
        if config:
            p.add_argument("--config", help="design configuration (JSON)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", help="also write the output to this path")
        p.add_argument("--seed", type=int, default=None, help="master random seed")
        p.add_argument("--trials", type=int, default=20, help="randomized trials")

    p = sub.add_parser("group", help="inspect a finite group")
    p.add_argument("--config", help="group spec (JSON)")
    p.add_argument("--kind", choices=("cyclic", "dihedral"))
    p.add_argument("--m", type=int)
    p.add_argument("--cosets", help="print cosets of the subgroup generated by these")
    p.add_argument("--complement", help="find a complement of the subgroup generated by these")
    p.add_argument("--all-complements", action="store_true")
    p.add_argument("--transversal", help="K_GENS:H_GENS, print taus and canonical order")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("verify", help="run the verification suite on a design")
    common(p)
    p.add_argument(
        "--expect-unrecoverable",
        action="store_true",
        help="pass when the design is (correctly) unrecoverable",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reconstruct", help="sample and rebuild a state")
    common(p)
    p.add_argument("--state", required=True, help="state vector (JSON, [re,im] pairs)")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("demo-cyclic", help="periodic-signal sampling scenario")
    common(p, config=False)
    p.add_argument("--m", type=int, required=True, help="signal length")
    p.add_argument("--r", type=int, required=True, help="sampling period (divides m)")
    p.add_argument("--n", type=int, default=None, help="number of systems (default r)")
    p.add_argument("--systems", help="JSON file with explicit filter vectors")
    p.set_defaults(func=cmd_demo_cyclic)

    p = sub.add_parser("demo-dihedral", help="dihedral-group sampling scenario")
    common(p, config=False)
    p.add_argument("--m", type=int, required=True, help="dihedral parameter (order 2m)")
    p.add_argument("--n", type=int, default=None, help="number of systems (default m)")
    p.add_argument("--random", action="store_true", help="random systems instead of deltas")
    p.set_defaults(func=cmd_demo_dihedral)

    p = sub.add_parser("dynamics", help="evolve a sampled state under a commuting Hamiltonian")
    common(p)
    p.add_argument("--times", default="0,0.1,1.0", help="comma-separated times")
    p.set_defaults(func=cmd_dynamics)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", None) is None and hasattr(args, "seed"):
        if args.command in ("demo-cyclic", "demo-dihedral"):
            args.seed = 0
    try:
        return args.func(args)
    except ConfigError as exc:
        sys.stderr.write(f"error {exc}\n")
        return EXIT_CONFIG_ERROR
    except UnrecoverableDesignError as exc:
        sys.stderr.write(f"error [inverse]: {exc}\n")
        return EXIT_UNRECOVERABLE
    except (OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error [parse]: {exc}\n")
        return EXIT_CONFIG_ERROR


if __name__ == "__main__":
    sys.exit(main())
