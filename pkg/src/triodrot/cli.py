"""Command-line front end.

Exit codes: 0 ok, 1 negative verdict, 2 bad input, 3 search budget hit.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__
from .conjugacy import conjugacy
from .core import (
    TriodPattern,
    canonical_form,
    degrees_of_freedom,
    inner_ring_map,
    inner_ring_relabeling,
    rotation_pair,
)
from .errors import NoInnerRing, TriodError
from .forcing import DEFAULT_LOOP_BUDGET, forced_patterns, rotation_interval
from .generator import catalog_one_third, family, generate
from .invariants import run_suite, suite_ok
from .oracle import differential_census
from .plinear import build, modality
from .render import FORMATS, TARGETS, render
from .trp import read_trp, write_trp
from .twist import (
    CUMULATIVE,
    LITERAL,
    VARIANTS,
    chi,
    color_table,
    countries,
    is_twist,
    phase_table,
    states,
    verify_chi_bounds,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

log = logging.getLogger("triodrot")


def rat(x: Fraction | int) -> str:
    """Rational as a ``p/q`` string, denominator always present."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rho(text: str) -> tuple[int, int]:
    try:
        p, q = text.split("/")
        return int(p), int(q)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected p/q, got {text!r}") from None


def analysis(P: TriodPattern) -> dict:
    rp = rotation_pair(P)
    mrp = rp.modified()
    table = color_table(P)
    try:
        relabel = list(inner_ring_relabeling(P))
    except NoInnerRing:
        relabel = None
    verdict = is_twist(P)
    cum = phase_table(P, CUMULATIVE)
    lit = phase_table(P, LITERAL)
    report = {
        "pattern": P.inline(),
        "rotation_pair": {"p": rp.p, "q": rp.q},
        "modified_rotation_pair": {"rho": rat(mrp.rho), "mult": mrp.mult},
        "df": degrees_of_freedom(P),
        "inner_ring": {
            "present": relabel is not None,
            "relabeling": relabel,
            "map": {str(b): t for b, t in inner_ring_map(P).items()},
        },
        "colors": [
            {"step": k, "placement": list(P.steps[k]), "color": table.colors[k], "bound": table.bounds[k]}
            for k in range(P.period)
        ],
        "states": [{"color": s.color, "branch": s.branch, "ranks": list(s.ranks)} for s in states(P)],
        "countries": [
            {
                "points": [list(pl) for pl in c.points],
                "innermost": list(c.innermost),
                "kappa": list(c.kappa),
                "lambda": list(c.lam),
                "successor": c.successor,
            }
            for c in countries(P)
        ],
        "phase_cumulative": [rat(v) for v in cum.values],
        "phase_literal": [rat(v) for v in lit.values],
        "chi": {"cumulative": rat(chi(P, phases=cum)), "literal": rat(chi(P, phases=lit))},
        "modality": modality(build(P)),
        "twist_verdict": {
            "kind": verdict.kind,
            "reason": verdict.reason,
            "witness": _jsonable(verdict.witness),
            "normalized": verdict.normalized.inline() if verdict.normalized else None,
        },
        "chi_bounds": None,
        "conjugacy": None,
    }
    if verdict.is_twist:
        bounds = verify_chi_bounds(P)
        report["chi_bounds"] = [
            {
                "name": c.name,
                "value": None if c.value is None else rat(c.value),
                "bound": rat(c.bound),
                "ok": c.ok,
                "gated": c.gated,
            }
            for c in bounds.checks
        ]
        conj = conjugacy(P)
        report["conjugacy"] = {
            "theta": [rat(t) for t in conj.theta],
            "pieces": conj.pieces,
            "bound": conj.bound,
            "ok": conj.ok,
        }
    return report


def _jsonable(obj):
    if obj is None or isinstance(obj, (str, int, bool)):
        return obj
    if isinstance(obj, Fraction):
        return rat(obj)
    if isinstance(obj, (tuple, list)):
        return [_jsonable(x) for x in obj]
    return str(obj)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def cmd_analyze(args) -> int:
    P = read_trp(args.file)
    report = analysis(P)
    if args.json:
        sys.stdout.write(_dump(report))
    else:
        key = "phase_" + args.phase_variant
        lines = [
            f"pattern            {report['pattern']}",
            f"rotation pair      ({report['rotation_pair']['p']},{report['rotation_pair']['q']})",
            f"df                 {report['df']}",
            f"modality           {report['modality']}",
            f"colors             {' '.join(c['color'] for c in report['colors'])}",
            f"{'phase (' + args.phase_variant + ')':<19}{' '.join(report[key])}",
            f"{'chi (' + args.phase_variant + ')':<19}{report['chi'][args.phase_variant]}",
            f"verdict            {is_twist(P)}",
        ]
        if report["conjugacy"]:
            c = report["conjugacy"]
            lines.append(f"conjugacy pieces   {c['pieces']} (bound {c['bound']})")
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK if report["twist_verdict"]["kind"] == "Twist" else EXIT_NEGATIVE


def cmd_generate(args) -> int:
    p, q = args.rho
    if (p, q) == (1, 3):
        fam = catalog_one_third()
        names = [f"pi_1_3_s{i}.trp" for i in range(4)]
        members = list(fam.members)
        if args.branch is not None:
            members, names = [members[args.branch]], [names[args.branch]]
    else:
        if args.branch == 3:
            raise ValueError("branch 3 names a catalog member; only 1/3 has one")
        if args.branch is not None and not args.all:
            members = [generate(p, q, args.branch)]
            names = [f"pi_{p}_{q}_b{args.branch}.trp"]
        else:
            fam = family(p, q)
            members = list(fam.members)
            names = [f"pi_{p}_{q}_b{i}.trp" for i in range(3)]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {"rho": rat(Fraction(p, q)), "members": []}
    for name, P in zip(names, members):
        write_trp(out / name, P, f"unimodal twist member, rotation number {p}/{q}")
        rp = rotation_pair(P)
        manifest["members"].append(
            {
                "file": name,
                "trp": P.inline(),
                "rotation_pair": {"p": rp.p, "q": rp.q},
                "df": degrees_of_freedom(P),
                "modality": modality(build(P)),
                "verdict": str(is_twist(P)),
            }
        )
        if (p, q) == (1, 3) and degrees_of_freedom(P) < 3:
            manifest["members"][-1]["note"] = f"catalog member, df = {degrees_of_freedom(P)}"
        print(out / name)
    (out / f"family_{p}_{q}.json").write_text(_dump(manifest), encoding="utf-8", newline="\n")
    return EXIT_OK


def cmd_forced(args) -> int:
    P = read_trp(args.file)
    rho = Fraction(*args.rho) if args.rho else None
    found = forced_patterns(build(P), args.max_period, rho=rho, budget=args.budget)
    for c in found.sorted():
        print(f"rp={c.rotation.p}/{c.rotation.q} period={c.period} trp={canonical_form(c.pattern).inline()}")
    if found.partial:
        print("# partial: loop budget exceeded", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_rotset(args) -> int:
    P = read_trp(args.file)
    ri = rotation_interval(build(P), args.max_period, args.budget)

    def deg(d):
        return None if d is None else ("2^inf" if d == float("inf") else d)

    report = {
        "t1": rat(ri.lo),
        "t2": rat(ri.hi),
        "m1_lower_bound": deg(ri.lo_degree),
        "m2_lower_bound": deg(ri.hi_degree),
        "max_period": ri.max_period,
        "partial": ri.partial,
    }
    if args.json:
        sys.stdout.write(_dump(report))
    else:
        print(f"rotation interval [{report['t1']}, {report['t2']}]")
        print(
            f"endpoint multiplicities found up to period {ri.max_period}: "
            f"{report['m1_lower_bound']}, {report['m2_lower_bound']} (lower bounds)"
        )
    return EXIT_BUDGET if ri.partial else EXIT_OK


def cmd_render(args) -> int:
    P = read_trp(args.file)
    text = render(P, args.what, args.format)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_atlas(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    report = differential_census(args.period, args.loop_bound, repro_dir=out, budget=args.budget)
    report.write_csv(out / "census.csv")
    print(report.summary())
    if report.disagreements:
        return EXIT_NEGATIVE
    if report.inconclusive:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_verify(args) -> int:
    P = read_trp(args.file)
    findings = run_suite(P, args.oracle_bound)
    for f in findings:
        mark = "ok  " if f.ok else ("info" if f.informational else "FAIL")
        detail = f"  [{f.detail}]" if f.detail else ""
        print(f"{mark} {f.name}{detail}")
    return EXIT_OK if suite_ok(findings) else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="triodrot", description="Rotation twist patterns on the triod.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for one pattern")
    p.add_argument("file")
    p.add_argument("--phase-variant", choices=VARIANTS, default=CUMULATIVE)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("generate", help="write the unimodal twist family of p/q")
    p.add_argument("rho", type=parse_rho, metavar="p/q")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--branch", type=int, choices=(0, 1, 2, 3))
    group.add_argument("--all", action="store_true")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("forced", help="patterns forced up to a period")
    p.add_argument("file")
    p.add_argument("--max-period", type=int, required=True)
    p.add_argument("--rho", type=parse_rho, metavar="p/q")
    p.add_argument("--budget", type=int, default=DEFAULT_LOOP_BUDGET)
    p.set_defaults(func=cmd_forced)

    p = sub.add_parser("rotset", help="rotation interval of the P-linear map")
    p.add_argument("file")
    p.add_argument("--max-period", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_LOOP_BUDGET)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_rotset)

    p = sub.add_parser("render", help="DOT or SVG drawing")
    p.add_argument("file")
    p.add_argument("--what", choices=TARGETS, default="pattern")
    p.add_argument("--format", choices=FORMATS, default="svg")
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("atlas", help="exhaustive census against the forcing oracle")
    p.add_argument("--period", type=int, required=True)
    p.add_argument("--loop-bound", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_LOOP_BUDGET)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("verify", help="run the invariant suite on one pattern")
    p.add_argument("file")
    p.add_argument("--oracle-bound", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (TriodError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
