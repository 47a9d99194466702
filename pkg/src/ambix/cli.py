"""Command line interface.

Exit codes: 0 success, 1 a check failed (or engines disagreed), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import catalog
from .cocycle import DEFAULT_COCYCLE_CAP
from .core import (
    AmbiguityReport,
    AmbiguityRow,
    EngineDisagreement,
    EquipmentError,
    NoEngine,
    ambiguity_index,
    bogomolov,
    class_labels,
    engines_for,
    equipped,
    scan_equipments,
    verify_suite,
)
from .cover import split_report
from .fpgroup import CosetLimitExceeded, PresentationSyntaxError, RecipeRejected
from .hurwitz import BudgetExceeded, DEFAULT_TUPLE_BUDGET, grow_schedule, stabilization_scan
from .perm import abelian_invariants, conjugacy_classes


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _split_selectors(text: str) -> list[str]:
    """Split on commas that are not inside parentheses (``rep:(1,2),cycles:3``)."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if cur:
        out.append("".join(cur).strip())
    return [s for s in out if s]


def _group(args):
    try:
        return catalog.make_group(args.group, args.max_cosets)
    except (ValueError, PresentationSyntaxError) as exc:
        raise UsageError(str(exc)) from None


def _report(args, G) -> AmbiguityReport:
    return AmbiguityReport(args.group, G.order, (), None)


def cmd_h2(args):
    G = _group(args)
    t = time.perf_counter()
    E = engines_for(G, args.group, args.cocycle_cap)
    rep = _report(args, G)
    rep.h2_divisors = E.h2_divisors()
    rep.timings["h2"] = time.perf_counter() - t
    return rep, []


def cmd_b0(args):
    G = _group(args)
    t = time.perf_counter()
    rep = _report(args, G)
    rep.b0 = bogomolov(G, args.group, args.cocycle_cap)
    if not rep.b0.lower_bound:
        rep.h2_divisors = engines_for(G, args.group, args.cocycle_cap).h2_divisors()
    rep.timings["b0"] = time.perf_counter() - t
    return rep, []


def cmd_index(args):
    G = _group(args)
    t = time.perf_counter()
    eg = equipped(G, _split_selectors(args.equipment), args.group)
    a, k, engine = ambiguity_index(eg, args.cocycle_cap)
    E = engines_for(G, args.group, args.cocycle_cap)
    rep = _report(args, G)
    rep.h2_divisors = E.h2_divisors()
    exp = None
    kind = args.group.partition(":")[0]
    if kind in ("sym", "alt"):
        exp = catalog.expected_ambiguity(kind, list(eg.classes), int(args.group.partition(":")[2]))
    rep.rows.append(AmbiguityRow(tuple(eg.labels), a, k, engine, exp))
    rep.timings["index"] = time.perf_counter() - t
    fails = [f"a = {a} but the cycle-type prediction is {exp}"] if exp is not None and exp != a else []
    return rep, fails


def cmd_split(args):
    G = _group(args)
    if args.cover not in catalog.COVER_NAMES and args.cover not in catalog.PULLBACK_COVERS:
        raise UsageError(f"unknown cover {args.cover!r}")
    t = time.perf_counter()
    c = catalog.load_cover(args.cover)
    if c.target.order != G.order or not all(c.target.contains(g) for g in G.gens):
        raise UsageError(f"cover {args.cover} is not a cover of {args.group}")
    labels = dict(zip(conjugacy_classes(c.target), class_labels(c.target)))
    rep = _report(args, G)
    rep.h2_divisors = abelian_invariants(c.cover.subgroup(list(c.kernel_in_derived)))
    sr = split_report(c)
    rep.splitting = [(labels[cl], s) for cl, s, _ in sr.rows]
    fails = []
    kind, _, deg = args.group.partition(":")
    if kind in ("sym", "alt") and c.is_maximal and int(deg) not in (6, 7):
        for cl, s, _ in sr.rows:
            predicted = 2 if catalog.split_predicate(kind, cl) else 1
            if predicted != s:
                fails.append(f"{labels[cl]}: s = {s}, predicted {predicted}")
    rep.timings["split"] = time.perf_counter() - t
    return rep, fails


def cmd_scan(args):
    G = _group(args)
    rep = scan_equipments(G, args.group, args.cocycle_cap)
    return rep, list(rep.failures)


def cmd_verify(args):
    t = time.perf_counter()
    suite = verify_suite(args.suite, args.cocycle_cap, seed=args.seed, max_cosets=args.max_cosets)
    out = {
        "suite": suite.scope,
        "passed": suite.passed,
        "checks": [
            {"name": c.name, "subject": c.subject, "passed": c.passed, "detail": c.detail} for c in suite.checks
        ],
        "timings": {"verify": round(time.perf_counter() - t, 4)},
    }
    return out, [f"{c.subject}: {c.name}: {c.detail}" for c in suite.failures()]


def cmd_hurwitz(args):
    G = _group(args)
    eg = equipped(G, _split_selectors(args.equipment), args.group)
    tau = _int_list(args.tau)
    if len(tau) != len(eg.classes):
        raise UsageError(f"--tau needs {len(eg.classes)} entries, one per class of the equipment")
    t = time.perf_counter()
    reference = None
    try:
        reference = ambiguity_index(eg, args.cocycle_cap)[0]
    except NoEngine:
        pass
    res = stabilization_scan(eg, grow_schedule(tau, args.grow), conjugation=args.conjugation,
                             budget=args.budget, reference=reference)
    out = {
        "spec": args.group,
        "order": G.order,
        "classes": eg.labels,
        "experimental": True,
        "conjugation": args.conjugation,
        "rows": [r.as_row() for r in res.rows],
        "stabilized": res.stabilized,
        "partial": res.partial,
        "a": reference,
        "verdict": res.verdict,
        "timings": {"hurwitz": round(time.perf_counter() - t, 4)},
    }
    fails = ["a stabilized orbit count contradicts the engine value"] if res.contradicts_reference else []
    return out, fails


def _text(payload: dict) -> str:
    lines = []
    for key, val in payload.items():
        if val in (None, [], {}):
            continue
        if key in ("rows", "checks", "splitting") and isinstance(val, list):
            lines.append(f"{key}:")
            for row in val:
                lines.append("  " + "  ".join(f"{k}={v}" for k, v in row.items()))
        elif isinstance(val, dict):
            lines.append(f"{key}: " + ", ".join(f"{k}={v}" for k, v in val.items()))
        else:
            lines.append(f"{key}: {val}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--cocycle-cap", type=int, default=DEFAULT_COCYCLE_CAP)
    common.add_argument("--max-cosets", type=int, default=None)
    common.add_argument("--no-timings", action="store_true", help="omit timings for reproducible output")

    p = argparse.ArgumentParser(prog="ambix", description="Invariants of equipped finite groups.")
    sub = p.add_subparsers(dest="command", required=True)

    for name, help_ in (("h2", "Schur multiplier"), ("b0", "Bogomolov multiplier"),
                        ("scan", "all generating equipments")):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("--group", required=True)

    sp = sub.add_parser("index", parents=[common], help="ambiguity index of one equipment")
    sp.add_argument("--group", required=True)
    sp.add_argument("--equipment", required=True)

    sp = sub.add_parser("split", parents=[common], help="splitting numbers in a shipped cover")
    sp.add_argument("--group", required=True)
    sp.add_argument("--cover", required=True)

    sp = sub.add_parser("verify", parents=[common], help="theorem-checking suite")
    sp.add_argument("--suite", default="core")
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("hurwitz", parents=[common], help="braid-orbit counts (experimental)")
    sp.add_argument("--group", required=True)
    sp.add_argument("--equipment", required=True)
    sp.add_argument("--tau", required=True)
    sp.add_argument("--grow", type=int, default=0, help="extra steps, adding 2 to every entry of tau each")
    sp.add_argument("--conjugation", action="store_true", help="also identify simultaneous conjugates")
    sp.add_argument("--budget", type=int, default=DEFAULT_TUPLE_BUDGET)
    return p


COMMANDS = {
    "h2": cmd_h2, "b0": cmd_b0, "index": cmd_index, "split": cmd_split,
    "scan": cmd_scan, "verify": cmd_verify, "hurwitz": cmd_hurwitz,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        payload, fails = COMMANDS[args.command](args)
    except (UsageError, EquipmentError, NoEngine, RecipeRejected, CosetLimitExceeded, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EngineDisagreement as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    if isinstance(payload, AmbiguityReport):
        payload = payload.as_dict(timings=not args.no_timings)
    elif args.no_timings:
        payload["timings"] = {}
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(_text(payload))
    for f in fails:
        print(f"check failed: {f}", file=sys.stderr)
    return 1 if fails else 0


if __name__ == "__main__":
    sys.exit(main())
