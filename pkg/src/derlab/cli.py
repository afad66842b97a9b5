"""Command line driver: ``derlab prove | demo | lab``."""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from typing import Optional, Sequence

from .model import check_model, construct_rstar
from .problem import ParseError, ProblemFile, parse_file
from .redundancy import satisfiable
from .replay import replay_incompleteness
from .rewriting import (
    GroundClosure,
    NotLeftReducedError,
    Variant,
    closure_compare,
    lss_lts,
    nm,
    ss_ts_nh,
)
from .saturation import Limits, UNSAT, SATURATED, format_proof, saturate
from .simplify import RegimeConfig, RegimeError


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="derlab", description="Superposition with destructive equality resolution.")
    sub = p.add_subparsers(dest="command", required=True)

    prove = sub.add_parser("prove", help="saturate a problem file")
    prove.add_argument("file")
    prove.add_argument("--regime", choices=["classical", "horn-closure", "nonhorn-closure"], default="horn-closure")
    prove.add_argument("--der", choices=["off", "full", "negative-only"])
    prove.add_argument("--demod", choices=["off", "proper-subterm", "full"])
    prove.add_argument("--subsume", choices=["off", "propositional", "first-order"])
    prove.add_argument("--max-clauses", type=int, default=Limits.max_clauses)
    prove.add_argument("--timeout-s", type=float, default=Limits.timeout_s)
    prove.add_argument("--proof", action="store_true", help="print the proof tree or the saturated set")
    prove.add_argument(
        "--force-classical-experiment",
        action="store_true",
        help="allow flag combinations the regime does not license",
    )

    demo = sub.add_parser("demo", help="scripted scenarios")
    demo.add_argument("scenario", choices=["incompleteness"])

    lab = sub.add_parser("lab", help="closure-ordering laboratory")
    lab.add_argument("tool", choices=["nm", "rstar"])
    lab.add_argument("file")
    lab.add_argument("--json", action="store_true", help="machine-readable output")
    return p


# ---------------------------------------------------------------------------
# formatting helpers

def _fmt_elem(e) -> str:
    if isinstance(e, tuple) and len(e) == 2 and isinstance(e[1], int):
        return f"{e[0]}:{e[1]}"
    if isinstance(e, tuple):
        return "{" + ", ".join(sorted(map(str, e))) + "}"
    return str(e)


def _fmt_multiset(m: Counter | set) -> list[str]:
    items = m.elements() if isinstance(m, Counter) else iter(m)
    return sorted(_fmt_elem(e) for e in items)


def _variant_of(pf: ProblemFile) -> Variant:
    return pf.variant or Variant.HORN


def _lab_closures(pf: ProblemFile) -> dict[str, GroundClosure]:
    out = dict(pf.closures)
    for nc in pf.clauses:
        if nc.clause.is_ground():
            out.setdefault(nc.name, GroundClosure(nc.clause, {}))
    return out


# ---------------------------------------------------------------------------
# subcommands

def _prove(args) -> int:
    pf = parse_file(args.file)
    overrides = {
        k: v for k, v in (("der", args.der), ("demod", args.demod), ("subsumption", args.subsume)) if v is not None
    }
    regime = RegimeConfig.defaults(args.regime, **overrides)
    limits = Limits(args.max_clauses, args.timeout_s)
    result = saturate(
        pf.clause_list(),
        pf.ordering(),
        regime,
        limits,
        force=args.force_classical_experiment,
        names=[nc.name for nc in pf.clauses],
    )
    for w in result.warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(f"STATUS: {result.status}")
    print(f"% generated {result.generated}, iterations {result.iterations}")
    if args.proof:
        if result.status == UNSAT:
            print(format_proof(result.proof))
        elif result.status == SATURATED:
            for c in result.clauses:
                print(c)
    return 0


def _demo(args) -> int:
    report = replay_incompleteness()
    print(report.format())
    if report.entailment_base:
        print("entailment base: " + "; ".join(map(str, report.entailment_base)))
    return 0


def _lab_nm(pf: ProblemFile, as_json: bool) -> dict:
    cfg = pf.ordering()
    R = pf.rewrite_system()
    variant = _variant_of(pf)
    closures = _lab_closures(pf)
    data = {"variant": variant.value, "rules": [f"{l} -> {r}" for l, r in R], "closures": {}, "comparisons": []}
    for name, clo in closures.items():
        entry = {"closure": str(clo), "instance": str(clo.instance)}
        if variant is Variant.HORN:
            lss, lts = lss_lts(clo.clause)
            entry["lss"] = _fmt_multiset(lss)
            entry["lts"] = _fmt_multiset(lts)
        else:
            ss, ts = ss_ts_nh(clo.clause)
            entry["ss"] = _fmt_multiset(ss)
            entry["ts"] = _fmt_multiset(ts)
        entry["nm"] = _fmt_multiset(nm(R, clo, variant))
        data["closures"][name] = entry
    for a, b in pf.comparisons:
        r = closure_compare(cfg, R, variant, closures[a], closures[b])
        data["comparisons"].append({"left": a, "right": b, "result": r.name})
    return data


def _print_nm(data: dict):
    print(f"variant: {data['variant']}")
    print("R: {" + ", ".join(data["rules"]) + "}")
    for name, e in data["closures"].items():
        print(f"{name}: {e['closure']}")
        for key in ("lss", "lts", "ss", "ts", "nm"):
            if key in e:
                print(f"  {key} = {{{', '.join(e[key])}}}")
    for c in data["comparisons"]:
        print(f"compare({c['left']}, {c['right']}) = {c['result']}")


def _lab_rstar(pf: ProblemFile) -> dict:
    cfg = pf.ordering()
    variant = _variant_of(pf)
    closures = list(_lab_closures(pf).values())
    interp = construct_rstar(closures, variant, cfg)
    verdict = check_model(interp.R, closures, cfg, variant)
    return {
        "variant": variant.value,
        "productions": [
            {"lhs": str(p.lhs), "rhs": str(p.rhs), "closure": str(p.closure)} for p in interp.productions
        ],
        "model": verdict.holds,
        "failing": None if verdict.failing is None else str(verdict.failing),
        "satisfiable": satisfiable([c.instance for c in closures]),
    }


def _print_rstar(data: dict):
    print(f"variant: {data['variant']}")
    for p in data["productions"]:
        print(f"{p['lhs']} -> {p['rhs']}  by {p['closure']}")
    if not data["productions"]:
        print("R_* is empty")
    if data["model"]:
        print("R_* is a model of every closure")
    else:
        print(f"R_* falsifies {data['failing']}")
    print(f"instances satisfiable: {data['satisfiable']}")


def _lab(args) -> int:
    pf = parse_file(args.file)
    data = _lab_nm(pf, args.json) if args.tool == "nm" else _lab_rstar(pf)
    if args.json:
        print(json.dumps(data, indent=2))
    elif args.tool == "nm":
        _print_nm(data)
    else:
        _print_rstar(data)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    handlers = {"prove": _prove, "demo": _demo, "lab": _lab}
    try:
        return handlers[args.command](args)
    except ParseError as exc:
        for d in exc.diagnostics:
            print(f"{args.file}:{d}", file=sys.stderr)
        return 1
    except (OSError, RegimeError, NotLeftReducedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
