"""Command-line front end.

Subcommands: normal-form, classify, bilinear, eta, mu, gen, consum, verify.
Every run emits a deterministic JSON report (no timestamps); --out writes
it to a file, otherwise it goes to stdout.  Exit codes: 0 success, 1
computational error, 2 malformed input or bad usage.

The default seed comes from --seed, then the SLAGLAB_SEED environment
variable, then 0.  Tolerance overrides are echoed into every report.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import os
import sys
from pathlib import Path

import numpy as np

from . import generators, loops, serialize, slag, verify
from .errors import MalformedInput, SchemaViolation, SlagLabError
from .loops import ORIENTATION_REFLECTION


def _digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _report(subcommand: str, config: dict, inputs: dict, results: dict, checks=None) -> dict:
    checks = checks or []
    return {
        "subcommand": subcommand,
        "config": config,
        "inputs": {str(k): _digest(k) for k in inputs.values() if k},
        "results": results,
        "checks": checks,
        "passed": all(c.get("passed", True) for c in checks),
    }


def _emit(report: dict, out: str | None) -> None:
    text = serialize.dump_json(report, out)
    if out is None:
        print(text)


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("SLAGLAB_SEED")
    return int(env) if env else 0


def _load_pair(path):
    doc = serialize.load_json(path)
    return serialize.pair_from_json(doc)


def _pair_classification(v, vp, gap_tol: float, wall_tol: float) -> dict:
    av = slag.characteristic_angles(v, vp)
    tag = slag.classify_stabilizer(av, gap_tol=gap_tol)
    return {
        "theta": serialize.angle_vector_to_json(av),
        "theta_swapped": serialize.angle_vector_to_json(slag.angle_involution(av)),
        "stabilizer": tag.value,
        "stabilizer_dimension": tag.expected_dimension,
        "region": slag.classify_region(av, tol=wall_tol).value,
        "gap_tol": gap_tol,
        "wall_tol": wall_tol,
    }


def cmd_normal_form(args) -> dict:
    v, vp = _load_pair(args.pair)
    nf = slag.normal_form(v, vp)
    results = _pair_classification(v, vp, args.gap_tol, args.wall_tol)
    results["B"] = serialize.cmat_to_json(nf.B)
    results["reconstruction_residual"] = float(
        max(
            v.transform(nf.B).distance(slag.SLagPlane.standard()),
            vp.transform(nf.B).distance(slag.plane_from_angles(nf.theta.theta)),
        )
    )
    checks = [
        {
            "name": "reconstruction within 1e-8",
            "passed": results["reconstruction_residual"] < 1e-8,
        }
    ]
    return _report(
        "normal-form",
        {"seed": args.resolved_seed, "gap_tol": args.gap_tol, "wall_tol": args.wall_tol},
        {"pair": args.pair},
        results,
        checks,
    )


def cmd_classify(args) -> dict:
    if (args.pair is None) == (args.theta is None):
        raise MalformedInput("classify needs exactly one of --pair or --theta")
    if args.pair:
        v, vp = _load_pair(args.pair)
        results = _pair_classification(v, vp, args.gap_tol, args.wall_tol)
        inputs = {"pair": args.pair}
    else:
        vals = [float(x) for x in args.theta.split(",")]
        if len(vals) != 3:
            raise MalformedInput("--theta needs three comma-separated angles")
        theta = np.sort(np.array(vals))
        m = int(round(theta.sum() / np.pi))
        av = slag.AngleVector(theta, m)
        results = {
            "theta": serialize.angle_vector_to_json(av),
            "theta_swapped": serialize.angle_vector_to_json(slag.angle_involution(av)),
            "stabilizer": slag.classify_stabilizer(av, gap_tol=args.gap_tol).value,
            "region": slag.classify_region(av, tol=args.wall_tol).value,
            "gap_tol": args.gap_tol,
            "wall_tol": args.wall_tol,
        }
        inputs = {}
    return _report(
        "classify",
        {"seed": args.resolved_seed, "gap_tol": args.gap_tol, "wall_tol": args.wall_tol},
        inputs,
        results,
    )


def cmd_bilinear(args) -> dict:
    v, vp = _load_pair(args.pair)
    b = slag.graph_bilinear_form(v, vp)
    w = np.linalg.eigvalsh(b)
    results = {
        "B": serialize.rmat_to_json(b),
        "eigenvalues": [float(x) for x in w],
        "trace_minus_det": float(np.trace(b) - np.linalg.det(b)),
        "symmetry_residual": float(np.linalg.norm(b - b.T)),
    }
    try:
        line = slag.negative_eigenline(b, args.margin)
        results["negative_eigenline"] = [float(x) for x in line]
    except SlagLabError as exc:
        results["negative_eigenline"] = None
        results["eigenline_error"] = str(exc)
    checks = [
        {"name": "tr B = det B within 1e-9", "passed": abs(results["trace_minus_det"]) < 1e-9}
    ]
    return _report(
        "bilinear",
        {"seed": args.resolved_seed, "margin": args.margin},
        {"pair": args.pair},
        results,
        checks,
    )


def cmd_eta(args) -> dict:
    loop = serialize.pair_loop_from_json(serialize.load_json(args.loop))
    diagnostics = loops.validate_pair_loop(loop)
    value = loops.eta_invariant(loop, margin=args.margin)
    if args.csv:
        _write_eta_csv(loop, args.csv)
    results = {
        "eta": value,
        "component": loop.component_id,
        "diagnostics": diagnostics,
        "csv": args.csv,
    }
    return _report(
        "eta",
        {"seed": args.resolved_seed, "margin": args.margin},
        {"loop": args.loop},
        results,
    )


def _write_eta_csv(loop, path) -> None:
    """Per-sample angle trajectories and eigenvalue flows."""
    rows = []
    n = len(loop)
    for i, (v, vp) in enumerate(loop.samples):
        av = slag.characteristic_angles(v, vp)
        w = np.linalg.eigvalsh(slag.graph_bilinear_form(v, vp))
        rows.append(
            [i, i / n, *[f"{t:.12f}" for t in av.theta], av.trace_class,
             slag.classify_region(av).value, *[f"{x:.12f}" for x in w]]
        )
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["sample", "t", "theta1", "theta2", "theta3", "m", "region",
             "lambda1", "lambda2", "lambda3"]
        )
        writer.writerows(rows)


def cmd_mu(args) -> dict:
    fplus = serialize.framing_loop_from_json(serialize.load_json(args.plus))
    fminus = serialize.framing_loop_from_json(serialize.load_json(args.minus))
    if args.iso:
        iso = serialize.iso_list_from_json(serialize.load_json(args.iso))
    else:
        iso = [ORIENTATION_REFLECTION] * len(fplus)
    value = loops.mu_parity(fplus, fminus, iso)
    results = {"mu": value, "component": fplus.component_id, "default_iso": args.iso is None}
    return _report(
        "mu",
        {"seed": args.resolved_seed},
        {"plus": args.plus, "minus": args.minus, "iso": args.iso},
        results,
    )


def cmd_gen(args) -> dict:
    kind = args.kind
    if args.model and not kind:
        kind = "pair-loop"
    if not kind:
        raise MalformedInput("gen needs --kind (or --model for pair loops)")
    seed = args.resolved_seed
    kwargs: dict = {}
    if kind == "pair-loop":
        kwargs = {
            "model": args.model or "trivial",
            "n_samples": args.samples,
            "lambda_prime": args.lambda_prime,
        }
    elif kind == "framing-loop":
        kwargs = {"twists": args.twists, "n_samples": args.samples}
    elif kind == "angle-vector":
        kwargs = {"m": args.m, "stratum": args.stratum}
    elif kind in ("transverse-pair", "close-graphical-pair"):
        kwargs = {} if kind == "close-graphical-pair" else {"m": args.m, "stratum": args.stratum}
    value = generators.generate(kind, seed=seed, **kwargs)

    if kind == "su3":
        doc = {"matrix": serialize.cmat_to_json(value)}
    elif kind == "angle-vector":
        doc = serialize.angle_vector_to_json(value)
    elif kind == "slag-plane":
        doc = serialize.plane_to_json(value)
    elif kind in ("transverse-pair", "close-graphical-pair"):
        v, vp, av = value
        doc = serialize.pair_to_json(v, vp)
        doc["theta"] = serialize.angle_vector_to_json(av)
    elif kind == "pair-loop":
        doc = serialize.pair_loop_to_json(value)
    elif kind == "framing-loop":
        doc = serialize.framing_loop_to_json(value)
    else:
        raise MalformedInput(f"unknown generator kind {kind!r}")

    if args.out:
        serialize.dump_json(doc, args.out)
    results = {"kind": kind, "written": args.out, "document": None if args.out else doc}
    return _report(
        "gen",
        {"seed": seed, "kind": kind, **{k: str(v) for k, v in kwargs.items()}},
        {},
        results,
    )


def cmd_consum(args) -> dict:
    mu_values = []
    for tok in args.mu.split(","):
        tok = tok.strip()
        if tok in ("+1", "1"):
            mu_values.append(1)
        elif tok == "-1":
            mu_values.append(-1)
        else:
            raise MalformedInput(f"mu entries must be +1 or -1, got {tok!r}")
    names = args.names.split(",") if args.names else ["X+", "X-"]
    if len(names) != 2:
        raise MalformedInput("--names needs two comma-separated names")
    d = loops.ConnectedSumDescriptor(args.k, tuple(mu_values), names[0], names[1])
    canonical, wall = loops.connected_sum_descriptor(d)
    results = {
        "canonical": canonical,
        "wall": wall,
        "mu_plus": d.mu_plus,
        "mu_minu": d.mu_minus,
    }
    return _report("consum", {"seed": args.resolved_seed, "k": args.k, "mu": args.mu}, {}, results)


def cmd_verify(args) -> dict:
    outcome = verify.run_suites(args.suite, trials=args.trials, seed=args.resolved_seed)
    checks = [
        {"name": f"{s['suite']}: {c['name']}", "passed": c["passed"]}
        for s in outcome["suites"]
        for c in s["checks"]
    ]
    return _report(
        "verify",
        {"seed": args.resolved_seed, "suite": args.suite, "trials": args.trials},
        {},
        outcome,
        checks,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slaglab", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", default=None, help="write the JSON report here")

    p = sub.add_parser("normal-form", help="characteristic angles and SU(3) normal form")
    p.add_argument("--pair", required=True)
    p.add_argument("--gap-tol", type=float, default=1e-6)
    p.add_argument("--wall-tol", type=float, default=1e-8)
    common(p)
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("classify", help="stabilizer and region classification")
    p.add_argument("--pair")
    p.add_argument("--theta", help="three comma-separated angles")
    p.add_argument("--gap-tol", type=float, default=1e-6)
    p.add_argument("--wall-tol", type=float, default=1e-8)
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bilinear", help="graph bilinear form of a pair")
    p.add_argument("--pair", required=True)
    p.add_argument("--margin", type=float, default=1e-9)
    common(p)
    p.set_defaults(func=cmd_bilinear)

    p = sub.add_parser("eta", help="eigenline holonomy of a pair loop")
    p.add_argument("--loop", required=True)
    p.add_argument("--margin", type=float, default=1e-9)
    p.add_argument("--csv", default=None, help="write per-sample trajectories as CSV")
    common(p)
    p.set_defaults(func=cmd_eta)

    p = sub.add_parser("mu", help="framing comparison parity")
    p.add_argument("--plus", required=True)
    p.add_argument("--minus", required=True)
    p.add_argument("--iso", default=None, help="per-sample pairing matrices (JSON)")
    common(p)
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("gen", help="seeded generators for every input class")
    p.add_argument(
        "--kind",
        choices=[
            "su3", "angle-vector", "slag-plane", "transverse-pair",
            "close-graphical-pair", "pair-loop", "framing-loop",
        ],
    )
    p.add_argument("--model", choices=["trivial", "moebius"])
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--lambda-prime", type=float, default=0.5, dest="lambda_prime")
    p.add_argument("--twists", type=int, default=0)
    p.add_argument("--m", type=int, default=1, choices=[1, 2])
    p.add_argument("--stratum", default="generic", choices=list(generators.STRATA))
    common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("consum", help="connected-sum descriptor strings")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mu", required=True, help="comma-separated +1/-1 per component")
    p.add_argument("--names", default=None, help="two names, default 'X+,X-'")
    common(p)
    p.set_defaults(func=cmd_consum)

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--suite", default="all", choices=["all", *verify.SUITES])
    p.add_argument("--trials", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.resolved_seed = _resolve_seed(args)
    try:
        report = args.func(args)
    except (SchemaViolation, MalformedInput) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SlagLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    _emit(report, args.out)
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
