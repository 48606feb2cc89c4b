"""Command-line entry point.

Every subcommand builds a :class:`RunReport`; ``--json`` prints it as JSON,
otherwise a short human-readable rendering goes to stdout.  Exit status is
0 on success, 1 when a domain check fails or an input is rejected, and 2 on
usage errors.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Sequence

from . import bolenum, cosets, designs, intersections, orbits
from .catalog import catalog, names
from .errors import LoopError
from .io import (
    RunReport,
    dumps_loop,
    dumps_rectangle,
    emit_report,
    format_table,
    load_loop,
    loads_rectangle,
    parse_design,
    parse_loop,
    read_report,
    write_design,
    write_loop,
)
from .loop import all_subloops, subloop
from .properties import check_properties, is_left_automorphic, is_moufang, is_right_bol


class UsageError(Exception):
    pass


def _elements(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise UsageError(f"--subloop expects comma-separated integers, got {text!r}") from None


def _fmt_set(s) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


# -- subcommands ------------------------------------------------------------


def cmd_validate(args) -> RunReport:
    q = load_loop(args.loop)
    return RunReport("validate", {"loop": args.loop}, results={"order": q.n, "valid": True})


def cmd_props(args) -> RunReport:
    q = load_loop(args.loop)
    return RunReport("props", {"loop": args.loop}, results={"order": q.n, **check_properties(q).as_dict()})


def cmd_cosets(args) -> RunReport:
    q = load_loop(args.loop)
    sub = subloop(q, _elements(args.subloop))
    fam = cosets.coset_family(q, sub, args.side)
    res: dict = {}
    if args.distinct:
        res["cosets"] = [sorted(c) for c in fam.distinct]
    else:
        res["cosets"] = [[x, sorted(c)] for x, c in fam.cosets]
    res["distinct"] = len(fam.distinct)
    res["decomposition"] = cosets.decomposition_holds(q, sub, args.side)
    if args.semilattice:
        res["semilattice"] = [sorted(b) for b in cosets.semilattice(q, sub, args.side).sorted_elements()]
    if args.compare_lr:
        left = cosets.semilattice(q, sub, "left")
        right = cosets.semilattice(q, sub, "right")
        res["left_right_isomorphic"] = cosets.semilattices_isomorphic(left, right) is not None
    params = {"subloop": list(sub.elements), "side": args.side, "distinct": args.distinct}
    return RunReport("cosets", {"loop": args.loop}, params, res)


def _render_cosets(rep: RunReport) -> str:
    r = rep.results
    if "semilattice" in r:
        lines = [_fmt_set(b) for b in r["semilattice"]]
    elif rep.parameters["distinct"]:
        lines = [_fmt_set(c) for c in r["cosets"]]
    else:
        lines = [f"{x}: {_fmt_set(c)}" for x, c in r["cosets"]]
    lines.append(f"distinct: {r['distinct']}  decomposition: {r['decomposition']}")
    if "left_right_isomorphic" in r:
        lines.append(f"left/right semilattices isomorphic: {r['left_right_isomorphic']}")
    return "\n".join(lines) + "\n"


def cmd_semilattice(args) -> RunReport:
    q = load_loop(args.loop)
    sub = subloop(q, _elements(args.subloop))
    p = cosets.semilattice(q, sub, args.side)
    res: dict = {
        "elements": [sorted(b) for b in p.sorted_elements()],
        "maximal": [sorted(b) for b in sorted(p.maximal, key=cosets.set_key)],
    }
    if args.compare_lr:
        other = cosets.semilattice(q, sub, "right" if args.side == "left" else "left")
        iso = cosets.semilattices_isomorphic(p, other)
        res["isomorphic_to_other_side"] = iso is not None
    return RunReport("semilattice", {"loop": args.loop}, {"subloop": list(sub.elements), "side": args.side}, res)


def cmd_partition(args) -> RunReport:
    q = load_loop(args.loop)
    sub = subloop(q, _elements(args.subloop))
    reps = cosets.find_partition(q, sub, args.side)
    res = {"exists": reps is not None, "representatives": reps}
    if reps is not None:
        res["cosets"] = [sorted(cosets.coset(q, sub.elements, x, args.side)) for x in reps]
    return RunReport("partition", {"loop": args.loop}, {"subloop": list(sub.elements), "side": args.side}, res)


def _inner(spec: str | None):
    if spec is None or spec == "cyclic":
        return None
    return load_loop(spec)


def _design_results(d) -> dict:
    params = designs.design_params(d)
    return {
        "v": params.v,
        "b": params.b,
        "k": params.k,
        "r": params.r,
        "t": params.max_t,
        "lambdas": params.lambdas,
        "symmetric": params.symmetric,
        "simple": params.simple,
        "description": params.describe(),
    }


def cmd_design(args) -> RunReport:
    action = args.action
    if action == "extract":
        q = load_loop(args.loop)
        sub = subloop(q, _elements(args.subloop))
        d = designs.extract_design(q, sub, args.side)
        if args.out:
            write_design(d, args.out)
        res = _design_results(d)
        res["blocks"] = [sorted(b) for b in d.blocks]
        return RunReport("design extract", {"loop": args.loop}, {"subloop": list(sub.elements), "side": args.side}, res)
    if action == "params":
        d = parse_design(args.design)
        return RunReport("design params", {"design": args.design}, results=_design_results(d))
    if action == "realize":
        d = parse_design(args.design)
        real = designs.realize_design(d, _inner(args.inner))
        if args.out:
            write_loop(real.loop, args.out)
        back = designs.extract_design(real.loop, real.subloop, "left")
        res = {
            "order": real.loop.n,
            "subloop": list(real.subloop.elements),
            "table": [list(r) for r in real.loop.cayley],
            "round_trip_isomorphic": designs.designs_isomorphic(d, back) is not None,
        }
        return RunReport("design realize", {"design": args.design}, {"inner": args.inner or "cyclic"}, res)
    if action == "isomorphic":
        d1, d2 = parse_design(args.first), parse_design(args.second)
        iso = designs.designs_isomorphic(d1, d2)
        res = {"isomorphic": iso is not None, "map": None if iso is None else sorted(iso.items())}
        return RunReport("design isomorphic", {"first": args.first, "second": args.second}, results=res)
    # translate-search
    q = load_loop(args.loop)
    found = designs.translate_design_search(q, args.k, args.t, args.lam, args.limit)
    params = {"k": args.k, "t": args.t, "lambda": args.lam, "limit": args.limit}
    return RunReport("design translate-search", {"loop": args.loop}, params, {"count": len(found), "subsets": found})


def _load_enumfile(path: str):
    """Rectangles from a dump directory, or lengths from a summary report."""
    p = Path(path)
    if p.is_dir():
        rects = [loads_rectangle(f.read_text()) for f in sorted(p.glob("rect*.txt"))]
        table = parse_loop(p / "S.txt") if (p / "S.txt").exists() else None
        return (rects, table), None
    data = read_report(p)
    lengths = {int(k): v for k, v in data["results"]["lengths"].items()}
    return None, lengths


def cmd_orbits(args) -> RunReport:
    q = load_loop(args.loop)
    sub = subloop(q, _elements(args.subloop))
    part = orbits.relative_orbits(q, sub)
    res: dict = {"orbits": [sorted(o) for o in part.orbits], "lengths": part.lengths()}
    if args.lagrange:
        recs = orbits.lagrange_report(q, sub)
        res["lagrange"] = [
            {"size": r.size, "remainder": r.remainder, "cover": None if r.cover is None else list(r.cover)}
            for r in recs
        ]
    ok = True
    if args.check_against:
        rects, lengths = _load_enumfile(args.check_against)
        if rects is not None:
            rects, table = rects
            if table is not None and table.cayley != sub.table().cayley:
                raise LoopError(
                    "the dump was enumerated for a different table of S; "
                    "enumerate the subloop's own table (elements in increasing order)"
                )
            known = set(rects)
            missing = []
            for orb in part.orbits:
                for root in sorted(orb):
                    if orbits.action_rectangle(q, sub, root) not in known:
                        missing.append(root)
            res["unmatched_roots"] = missing
            ok = not missing
        else:
            ok = orbits.orbit_lengths_in_enumerated(q, sub, lengths)
        res["consistent"] = ok
    rep = RunReport("orbits", {"loop": args.loop}, {"subloop": list(sub.elements)}, res)
    if not ok:
        rep.results["error"] = "actual orbit not among enumerated potential orbits"
    return rep


def cmd_bol_orbits(args) -> RunReport:
    S = load_loop(args.subloop)
    cfg = bolenum.EnumConfig(max_symbols=args.max_symbols, max_rectangles=args.max_rects, time_budget=args.time_budget)
    t0 = time.perf_counter()
    enum, summary = bolenum.run(S, cfg, workers=args.threads)
    elapsed = time.perf_counter() - t0
    if args.dump_rects:
        out = Path(args.dump_rects)
        out.mkdir(parents=True, exist_ok=True)
        write_loop(S, out / "S.txt")
        width = len(str(len(enum.rectangles)))
        for i, rect in enumerate(enum.rectangles):
            (out / f"rect{str(i).zfill(width)}_{len(rect)}.txt").write_text(dumps_rectangle(rect))
    res = {
        "lengths": dict(summary.length_items()),
        "length_multiplicity": [f"{k}:{v}" for k, v in summary.length_items()],
        "formatted": summary.format_lengths(),
        "partition": "yes" if summary.verdict == "yes" else "unknown",
        "divisible": summary.divisible,
        "rectangles": len(enum.rectangles),
        "undecomposed": sum(not r.partition_found for r in summary.records),
        "truncation_reason": enum.reason,
    }
    params = {
        "max_symbols": cfg.symbol_cap(S.n),
        "max_rects": cfg.max_rectangles,
        "time_budget": cfg.time_budget,
        "threads": args.threads,
    }
    rep = RunReport("bol-orbits", {"subloop": args.subloop}, params, res, elapsed, enum.truncated)
    if args.summary:
        emit_report(rep, args.summary)
    return rep


def cmd_intersect(args) -> RunReport:
    q = load_loop(args.loop)
    subs = [subloop(q, _elements(args.subloop))] if args.subloop else [
        s for s in all_subloops(q) if 1 < s.m < q.n
    ]
    res: dict = {}
    if args.pair:
        x, y = args.pair
        rows = []
        for sub in subs:
            rec = intersections.intersection_record(q, sub, x, y)
            rows.append({
                "subloop": list(sub.elements),
                "meet": sorted(rec.meet),
                "fxy": None if rec.fxy is None else sorted(rec.fxy.items()),
                "cycle_type": list(rec.cycle_type),
                "shift_subloop": None if rec.shift_subloop is None else list(rec.shift_subloop),
            })
        res["pair"] = rows
    if args.all_pairs or not args.pair:
        moufang = is_moufang(q)
        lauto = is_left_automorphic(q)
        checks = []
        violations = 0
        for sub in subs:
            entry: dict = {"subloop": list(sub.elements), "pairs": len(intersections.overlapping_pairs(q, sub))}
            if is_right_bol(q):
                for x, y in intersections.overlapping_pairs(q, sub):
                    intersections.fxy(q, sub, x, y, check=False)
                entry["fxy_permutation"] = True
            if moufang:
                cl = intersections.cycle_length_check(q, sub)
                bad_shift = [
                    (x, y) for x, y in intersections.overlapping_pairs(q, sub)
                    if not intersections.moufang_shift_equality(q, sub, x, y, check=False)
                ]
                entry["cycle_length_violations"] = len(cl.violations)
                entry["shift_equality_violations"] = len(bad_shift)
                violations += len(cl.violations) + len(bad_shift)
            if moufang and lauto:
                dv = intersections.divisibility_theorem_check(q, sub)
                entry["divisibility_violations"] = len(dv.violations)
                violations += len(dv.violations)
            checks.append(entry)
        res["checks"] = checks
        res["violations"] = violations
        res["moufang"] = moufang
        res["left_automorphic"] = lauto
    rep = RunReport("intersect", {"loop": args.loop}, {"subloop": args.subloop}, res)
    if args.report:
        emit_report(rep, args.report)
    return rep


def cmd_catalog(args) -> RunReport:
    if args.action == "list":
        return RunReport("catalog list", results={"names": names()})
    q = catalog(args.name)
    res = {"name": args.name, "order": q.n, "table": [list(r) for r in q.cayley]}
    return RunReport("catalog show", {"name": args.name}, results=res)


# -- rendering --------------------------------------------------------------


def _render(rep: RunReport) -> str:
    r = rep.results
    cmd = rep.command
    if cmd == "catalog list":
        return "\n".join(r["names"]) + "\n"
    if cmd == "catalog show":
        return dumps_loop(catalog(r["name"]))
    if cmd == "validate":
        return f"valid loop of order {r['order']}\n"
    if cmd == "props":
        return format_table([(k, v) for k, v in r.items()], ("property", "value"))
    if cmd == "cosets":
        return _render_cosets(rep)
    if cmd == "semilattice":
        out = [_fmt_set(b) for b in r["elements"]]
        if "isomorphic_to_other_side" in r:
            out.append(f"isomorphic to other side: {r['isomorphic_to_other_side']}")
        return "\n".join(out) + "\n"
    if cmd == "partition":
        if not r["exists"]:
            return "no partition into cosets\n"
        return "\n".join(f"{x}: {_fmt_set(c)}" for x, c in zip(r["representatives"], r["cosets"])) + "\n"
    if cmd.startswith("design"):
        if "description" in r:
            return f"{r['description']} (v={r['v']}, b={r['b']}, k={r['k']}, r={r['r']})\n"
        if "isomorphic" in r:
            return f"isomorphic: {r['isomorphic']}\n"
        if "round_trip_isomorphic" in r:
            rows = "\n".join(" ".join(map(str, row)) for row in r["table"])
            return f"{r['order']}\n{rows}\nround trip isomorphic: {r['round_trip_isomorphic']}\n"
        return "\n".join(" ".join(map(str, s)) for s in r["subsets"]) + f"\ncount: {r['count']}\n"
    if cmd == "orbits":
        rows = [(i, len(o), _fmt_set(o)) for i, o in enumerate(r["orbits"])]
        text = format_table(rows, ("orbit", "size", "points"))
        if "lagrange" in r:
            text += format_table(
                [(i, x["size"], x["remainder"], x["cover"]) for i, x in enumerate(r["lagrange"])],
                ("orbit", "size", "size mod |S|", "coset cover"),
            )
        if "consistent" in r:
            text += f"consistent with enumeration: {r['consistent']}\n"
        return text
    if cmd == "bol-orbits":
        trunc = f"  (truncated: {r['truncation_reason']})" if rep.truncated else ""
        return f"lengths: {r['formatted']}\npartition: {r['partition']}{trunc}\n"
    if cmd == "intersect":
        text = ""
        for row in r.get("pair", []):
            text += f"S={_fmt_set(row['subloop'])} meet={_fmt_set(row['meet'])} cycles={row['cycle_type']}\n"
        if "checks" in r:
            text += f"subloops checked: {len(r['checks'])}  violations: {r['violations']}\n"
        return text
    return rep.to_json()


def _failed(rep: RunReport) -> bool:
    r = rep.results
    if rep.command == "orbits":
        return r.get("consistent") is False
    if rep.command == "intersect":
        return bool(r.get("violations"))
    return False


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="loopcosets", description="Cosets, designs and orbits in finite loops.")
    parser.add_argument("--json", action="store_true", help="print the structured report")
    parser.add_argument("--seed", type=int, default=None, help="reserved; all algorithms are deterministic")
    sub = parser.add_subparsers(dest="command", required=True)

    def loop_cmd(name, func, help_text, with_subloop=True, with_side=True):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("loop", help="loop file or catalog:NAME")
        if with_subloop:
            p.add_argument("--subloop", required=True, help="comma-separated elements, e.g. 0,1,2")
        if with_side:
            p.add_argument("--side", choices=("left", "right"), default="left")
        p.set_defaults(func=func)
        return p

    loop_cmd("validate", cmd_validate, "check a loop table", False, False)
    loop_cmd("props", cmd_props, "identities satisfied by a loop", False, False)

    p = loop_cmd("cosets", cmd_cosets, "left or right cosets of a subloop")
    p.add_argument("--distinct", action="store_true")
    p.add_argument("--semilattice", action="store_true")
    p.add_argument("--compare-lr", action="store_true")

    p = loop_cmd("semilattice", cmd_semilattice, "intersection semilattice of cosets")
    p.add_argument("--compare-lr", action="store_true", help="test isomorphism with the other side")

    loop_cmd("partition", cmd_partition, "partition the loop into cosets")

    p = sub.add_parser("design", help="coset designs")
    p.set_defaults(func=cmd_design)
    dsub = p.add_subparsers(dest="action", required=True)
    d = dsub.add_parser("extract")
    d.add_argument("loop")
    d.add_argument("--subloop", required=True)
    d.add_argument("--side", choices=("left", "right"), default="left")
    d.add_argument("--out")
    d = dsub.add_parser("params")
    d.add_argument("design")
    d = dsub.add_parser("realize")
    d.add_argument("design")
    d.add_argument("--inner", default="cyclic", help="'cyclic' or a loop file for the subloop")
    d.add_argument("--out")
    d = dsub.add_parser("isomorphic")
    d.add_argument("first")
    d.add_argument("second")
    d = dsub.add_parser("translate-search")
    d.add_argument("loop")
    d.add_argument("--k", type=int, required=True)
    d.add_argument("--t", type=int, default=2)
    d.add_argument("--lam", type=int, default=1)
    d.add_argument("--limit", type=int)

    p = loop_cmd("orbits", cmd_orbits, "orbits of the relative right multiplication group", True, False)
    p.add_argument("--lagrange", action="store_true")
    p.add_argument("--check-against", help="bol-orbits summary file or rectangle dump directory")

    p = sub.add_parser("bol-orbits", help="enumerate potential orbits over right Bol loops")
    p.add_argument("--subloop", required=True, help="loop file or catalog name")
    p.add_argument("--max-symbols", type=int)
    p.add_argument("--max-rects", type=int, default=10**6)
    p.add_argument("--time-budget", type=float)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--dump-rects", help="directory for one file per rectangle")
    p.add_argument("--summary", help="write the JSON summary here")
    p.set_defaults(func=cmd_bol_orbits)

    p = sub.add_parser("intersect", help="intersections of left cosets")
    p.add_argument("loop")
    p.add_argument("--subloop", help="default: every proper nontrivial subloop")
    p.add_argument("--pair", nargs=2, type=int, metavar=("X", "Y"))
    p.add_argument("--all-pairs", action="store_true")
    p.add_argument("--report")
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("catalog", help="built-in loops")
    csub = p.add_subparsers(dest="action", required=True)
    csub.add_parser("list")
    c = csub.add_parser("show")
    c.add_argument("name")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    try:
        rep = args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except (LoopError, OSError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    sys.stdout.write(rep.to_json() if args.json else _render(rep))
    if _failed(rep):
        print(f"error: {rep.command} check failed", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
