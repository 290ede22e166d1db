"""Command-line driver: construct, verify, solve, certify, and report bounds.

Exit codes: 0 = success / SAT / certificate accepted; 1 = a valid negative
answer (UNSAT, rejected certificate, failed verification); 2 = no answer
(parse error, exhausted budget or trials).  All randomness flows from the
single --seed flag (default 0), and identical invocations write identical
bytes.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import bounds as bounds_mod
from . import coloring, construct, hypergraphs


@dataclass
class RunConfig:
    subcommand: str
    seed: int
    strict: bool
    budget: Optional[int]
    fmt: str
    out: Optional[str]


def _parse_fraction(text: str) -> Fraction:
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected a fraction like 1/2, got {text!r}") from exc


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _load_family(path: str) -> hypergraphs.HypergraphFamily:
    return hypergraphs.family_from_dict(_load_json(path))


def _normalize_mode(mode: str) -> str:
    if mode in (coloring.GRAPH, coloring.HYPERGRAPH):
        return coloring.partition_mode_for(mode)
    return mode


def _cmd_construct(cfg: RunConfig, args: argparse.Namespace) -> int:
    params = construct.ConstructionParams(
        k=args.k,
        r=args.r,
        a=args.a,
        q=args.q,
        t=args.t,
        strategy=args.strategy,
        seed=cfg.seed,
        max_retries=args.max_retries,
        budget=cfg.budget,
    )
    family, trace = construct.iterative_family(params, strict=cfg.strict)
    trace_dict = trace.to_json_dict()
    if args.pad != "none":
        if args.pad == "cor1":
            targets = construct.corollary_targets(params)
        else:
            targets = [int(args.pad)] * params.k
        family, padding = construct.pad_family(
            family, targets, allow_duplicates=not args.no_duplicates
        )
        trace_dict["padding"] = [
            {
                "member": p.member,
                "target": p.target,
                "before": p.before,
                "simple_capacity": p.simple_capacity,
                "simple_added": p.simple_added,
                "duplicates_added": p.duplicates_added,
                "simple_shortfall": p.simple_shortfall,
            }
            for p in padding.members
        ]
    _emit(_json_text(hypergraphs.family_to_dict(family)), cfg.out)
    if args.trace:
        Path(args.trace).write_text(_json_text(trace_dict))
    return 0


def _cmd_verify(cfg: RunConfig, args: argparse.Namespace) -> int:
    family = _load_family(args.family)
    report: dict = {"n": family.num_vertices, "r": family.uniformity, "members": []}
    ok = True
    for i, h in enumerate(family.members):
        v = hypergraphs.validate(h, family.partition)
        alpha = hypergraphs.independence_number(h, budget=cfg.budget)
        entry = {
            "member": i,
            "edges": len(h.edges),
            "valid": v.ok,
            "violations": list(v.violations),
            "alpha": alpha,
        }
        if args.a is not None:
            limit = args.a * family.num_vertices
            entry["alpha_limit"] = str(limit)
            entry["alpha_ok"] = Fraction(alpha) < limit
            ok = ok and entry["alpha_ok"]
        ok = ok and v.ok
        report["members"].append(entry)
    nd = hypergraphs.are_nearly_disjoint(family)
    report["nearly_disjoint"] = nd.ok
    if not nd.ok:
        report["witness"] = [list(e) for e in nd.witness]
        report["witness_members"] = list(nd.witness_members)
    ok = ok and nd.ok
    report["ok"] = ok
    if cfg.fmt == "json":
        _emit(_json_text(report), cfg.out)
    else:
        lines = [f"family: n={report['n']} r={report['r']}"]
        for e in report["members"]:
            extra = f" alpha_ok={e['alpha_ok']}" if "alpha_ok" in e else ""
            lines.append(
                f"  member {e['member']}: edges={e['edges']} valid={e['valid']} "
                f"alpha={e['alpha']}{extra}"
            )
        lines.append(f"nearly_disjoint={nd.ok}")
        lines.append(f"ok={ok}")
        _emit("\n".join(lines) + "\n", cfg.out)
    return 0 if ok else 1


def _load_instance(path: str, mode_flag: Optional[str]):
    """A solve/certify input: a family JSON, lists JSON, or lists text file."""
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        spec, lists = coloring.lists_from_text(text)
        return coloring.family_from_lists(spec, lists), coloring.partition_mode_for(spec.mode)
    if isinstance(doc, dict) and "lists" in doc:
        spec, lists = coloring.lists_from_dict(doc)
        return coloring.family_from_lists(spec, lists), coloring.partition_mode_for(spec.mode)
    family = hypergraphs.family_from_dict(doc)
    if mode_flag is None:
        raise ValueError("--mode is required when solving a family file")
    return family, None


def _cmd_solve(cfg: RunConfig, args: argparse.Namespace) -> int:
    family, implied_mode = _load_instance(args.instance, args.mode)
    mode = _normalize_mode(args.mode) if args.mode else implied_mode
    if mode is None:
        raise ValueError("--mode is required when solving a family file")
    if args.random:
        outcome = coloring.solve_random(family, mode, seed=cfg.seed, trials=args.random)
        if outcome.succeeded:
            result = {
                "status": "sat",
                "method": "random",
                "trials_used": outcome.trials_used,
                "classes": list(outcome.partition.classes),
            }
            _emit(_json_text(result), cfg.out)
            return 0
        _emit(
            _json_text({"status": "unknown", "method": "random", "trials_used": outcome.trials_used}),
            cfg.out,
        )
        return 2
    partition = coloring.solve_exact(family, mode, budget=cfg.budget or 2_000_000)
    if partition is None:
        _emit(_json_text({"status": "unsat", "method": "exact", "mode": mode}), cfg.out)
        return 1
    _emit(
        _json_text({"status": "sat", "method": "exact", "mode": mode, "classes": list(partition.classes)}),
        cfg.out,
    )
    return 0


def _cmd_certify(cfg: RunConfig, args: argparse.Namespace) -> int:
    family = _load_family(args.family)
    mode = _normalize_mode(args.mode)
    result = coloring.verify_certificate(family, mode, budget=cfg.budget)
    if result.accepted:
        _emit(_json_text(result.certificate.to_json_dict()), cfg.out)
        return 0
    _emit(_json_text({"accepted": False, "failures": list(result.failures)}), cfg.out)
    return 1


def _cmd_gen_lists(cfg: RunConfig, args: argparse.Namespace) -> int:
    family = _load_family(args.family)
    targets = None
    if args.m:
        targets = [int(x) for x in args.m.split(",")]
        if len(targets) == 1:
            targets = targets * family.k
    spec, lists = coloring.lists_from_family(family, target_m=targets, mode=args.mode)
    if cfg.fmt == "json":
        _emit(_json_text(coloring.lists_to_dict(spec, lists)), cfg.out)
    else:
        _emit(coloring.lists_to_text(spec, lists), cfg.out)
    return 0


def _cmd_bounds(cfg: RunConfig, args: argparse.Namespace) -> int:
    sizes = [int(x) for x in args.m.split(",")]
    if len(sizes) > 1:
        report = bounds_mod.unbalanced_lower_threshold(args.k, sizes)
        if cfg.fmt == "json":
            _emit(_json_text(report.to_json_dict()), cfg.out)
        else:
            lines = [
                f"K_{{{','.join(map(str, sizes))}}}: candidate r={report.r} q={report.q} "
                f"certified={report.certified}",
                f"reason: {report.reason}",
            ]
            for iv in report.intervals:
                lines.append(
                    f"  part {iv.member}: m={iv.m} interval=[{iv.low}, {iv.high}] "
                    f"empty={iv.empty} contains={iv.contains}"
                )
            _emit("\n".join(lines) + "\n", cfg.out)
        return 0 if report.certified else 1
    report = bounds_mod.bound_report(args.k, sizes[0], args.mode)
    if cfg.fmt == "json":
        _emit(_json_text(report.to_json_dict()), cfg.out)
    else:
        header = f"{'k':>3} {'m':>9} {'mode':>10} {'upper_r':>8} {'lower_r':>8} {'chi_lower':>9} {'asymptotic':>11}"
        lower = "-" if report.lower_r is None else str(report.lower_r)
        chi = "-" if report.lower_r is None else str(report.lower_r + 1)
        row = (
            f"{report.k:>3} {report.m:>9} {report.mode:>10} {report.upper_r:>8} "
            f"{lower:>8} {chi:>9} {report.asymptotic:>11.4f}"
        )
        _emit(header + "\n" + row + "\n", cfg.out)
    return 0


def _cmd_demo(cfg: RunConfig, args: argparse.Namespace) -> int:
    lines = []

    # Five colors: a 5-cycle and its complement are edge-disjoint with
    # independence number 2 < 5/2 on both sides.
    c5 = hypergraphs.Hypergraph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)], 2)
    c5bar = hypergraphs.Hypergraph.from_edges(5, [(0, 2), (2, 4), (1, 4), (1, 3), (0, 3)], 2)
    family = hypergraphs.HypergraphFamily(5, (c5, c5bar))
    cert = coloring.verify_certificate(family, coloring.STAR)
    assert cert.accepted
    unsat = coloring.solve_exact(family, coloring.STAR)
    lines.append("five-color family (5-cycle + complement):")
    lines.append(f"  alphas = {list(cert.certificate.alpha)}, nearly disjoint, exact solver: "
                 f"{'UNSAT' if unsat is None else 'SAT'}")
    lines.append(f"  certificate: chi_l(K(2,5),1) >= {cert.certificate.claim.lower_bound_r_plus_1}")
    lines.append(f"  JSON: {json.dumps(cert.certificate.to_json_dict(), sort_keys=True)}")

    # Two nearly disjoint graphs on 64 vertices, padded to 1024 edges each.
    params = construct.ConstructionParams(
        k=2, r=2, a=Fraction(1, 2), q=8, seed=cfg.seed, budget=cfg.budget
    )
    fam2, _trace = construct.iterative_family(params, strict=cfg.strict)
    fam2, padding = construct.pad_family(fam2, construct.corollary_targets(params), True)
    cert2 = coloring.verify_certificate(fam2, coloring.STAR, budget=cfg.budget)
    assert cert2.accepted
    m = cert2.certificate.claim.min_m
    rep = bounds_mod.bound_report(2, m, coloring.GRAPH)
    lines.append("")
    lines.append(f"iterative family (k=2, r=2, a=1/2, q=8), padded to {m} edges per member:")
    for p in padding.members:
        lines.append(
            f"  member {p.member}: {p.before} -> {p.target} edges "
            f"(simple capacity {p.simple_capacity}, +{p.simple_added} simple, "
            f"+{p.duplicates_added} duplicates)"
        )
    alpha_limit = Fraction(1, 2) * fam2.num_vertices
    lines.append(f"  alphas = {list(cert2.certificate.alpha)} < {alpha_limit}")
    lines.append(f"  certificate: chi_l(K(2,{m}),1) >= {cert2.certificate.claim.lower_bound_r_plus_1}")
    lines.append(
        f"  bounds: {cert2.certificate.claim.lower_bound_r_plus_1} <= chi_l(K(2,{m}),1) "
        f"<= {rep.upper_r} (independent thresholds: lower_r={rep.lower_r}, "
        f"upper_r={rep.upper_r}, asymptotic reference {rep.asymptotic:.1f})"
    )
    _emit("\n".join(lines) + "\n", cfg.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sepcolor",
        description="nearly disjoint hypergraph families and separation-choosability bounds",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for all randomness (default 0)")
    common.add_argument("--budget", type=int, default=None, help="node budget for exact searches")
    common.add_argument("--strict", dest="strict", action="store_true", default=True)
    common.add_argument("--no-strict", dest="strict", action="store_false",
                        help="tolerate unverified independence bounds")
    common.add_argument("--format", dest="fmt", choices=["json", "table"], default="json")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a nearly disjoint family and trace")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--a", type=_parse_fraction, required=True, metavar="P/Q")
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--strategy", choices=["randomized", "greedy-cover"], default="randomized")
    p.add_argument("--max-retries", type=int, default=construct.DEFAULT_MAX_RETRIES)
    p.add_argument("--pad", default="cor1",
                   help="'cor1' (default), 'none', or an edge-count integer")
    p.add_argument("--no-duplicates", action="store_true",
                   help="fail instead of duplicating edges while padding")
    p.add_argument("--trace", default=None, help="write the construction trace here")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="validate a family file and compute exact alphas")
    p.add_argument("family")
    p.add_argument("--a", type=_parse_fraction, default=None, metavar="P/Q",
                   help="also check alpha < a*n per member")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("solve", parents=[common], help="exact or randomized class-partition solving")
    p.add_argument("instance", help="family JSON, lists JSON, or lists text file")
    p.add_argument("--mode", choices=["star", "star_star", "graph", "hypergraph"], default=None)
    p.add_argument("--random", type=int, default=0, metavar="TRIALS",
                   help="use the randomized solver with this many trials")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("certify", parents=[common], help="check lower-bound premises and emit a certificate")
    p.add_argument("family")
    p.add_argument("--mode", choices=["star", "star_star", "graph", "hypergraph"], required=True)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("gen-lists", parents=[common], help="turn a family into a list assignment file")
    p.add_argument("family")
    p.add_argument("--mode", choices=["graph", "hypergraph"], default="graph")
    p.add_argument("--m", default=None, help="comma-separated part sizes (round-robin duplication)")
    p.set_defaults(func=_cmd_gen_lists)

    p = sub.add_parser("bounds", parents=[common], help="threshold report for balanced or unbalanced targets")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", required=True, help="part size, or comma-separated sizes (unbalanced)")
    p.add_argument("--mode", choices=["graph", "hypergraph"], default="graph")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("demo", parents=[common], help="run the desk-scale experiments end to end")
    p.set_defaults(func=_cmd_demo)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        subcommand=args.subcommand,
        seed=args.seed,
        strict=args.strict,
        budget=args.budget,
        fmt=args.fmt,
        out=args.out,
    )
    try:
        return args.func(cfg, args)
    except hypergraphs.BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, json.JSONDecodeError, construct.RetriesExhausted,
            construct.EnumerationCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
