"""Command line front end: analyze, generate, verify, explore, render, oracle.

Exit codes: 0 success, 1 usage or parameter error, 2 not an interval graph,
3 guard or time budget exceeded, 4 a verification suite had FAIL rows.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import families
from .engine import (
    IntervalRepresentation,
    NotIntervalGraph,
    SearchBudgetExceeded,
    impropriety,
    interval_obstruction,
    properness,
)
from .graph import GraphFormatError, GuardExceeded, parse_graph_text, to_dot, to_edge_list, to_graph6
from .oracle import ORACLE_GUARD, oracle_search
from .spectrum import (
    FAIL,
    class_spectrum,
    oracle_equivalence,
    qproper_stability,
    removal_spectrum,
    theorem32_scan,
    verify_family_claims,
)
from .structure import structure_report

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_GUARD, EXIT_VERIFY = 0, 1, 2, 3, 4

RELOCATING = {"fig2": "K_p-n", "fig3": "Q2", "fig4": "Q2", "fig5": "Q"}


class UsageError(Exception):
    pass


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _load_graph(args):
    try:
        g = parse_graph_text(_read_input(args.input))
    except (OSError, GraphFormatError) as exc:
        raise UsageError(str(exc)) from exc
    if g.n > args.max_vertices:
        raise GuardExceeded(f"{g.n} vertices exceeds --max-vertices {args.max_vertices}")
    return g


# ---------------------------------------------------------------------------
# subcommands


def cmd_analyze(args) -> int:
    g = _load_graph(args)
    reason = interval_obstruction(g)
    if reason is not None:
        print(f"not an interval graph: {reason}", file=sys.stderr)
        _emit(_dumps({"n": g.n, "m": g.m, "interval": False, "reason": reason}), args.output)
        return EXIT_DOMAIN
    try:
        cert = impropriety(g, time_budget=args.time_budget)
        proper = properness(g, time_budget=args.time_budget)
    except SearchBudgetExceeded as exc:
        _emit(_dumps({"status": "time budget exceeded", "certificate": False,
                      "best_found_upper_bound": exc.best_found,
                      "note": "value among explored orderings only; not optimal by exhaustion",
                      "stats": exc.stats}), args.output)
        return EXIT_GUARD
    report = removal_spectrum(g)
    out = {
        "n": g.n,
        "m": g.m,
        "interval": True,
        "imp": cert.value,
        "proper": proper.value,
        "spectrum": report.spectrum,
        "per_vertex": [list(x) for x in report.per_vertex],
        "critical": report.critical,
        "certificate": cert.to_json(),
        "notes": report.notes,
    }
    if cert.value >= 1:
        out["structure"] = structure_report(g).to_json()
    else:
        out["structure"] = None
    _emit(_dumps(out), args.output)
    return EXIT_OK


def _instance(args):
    tag = args.family
    try:
        if tag in families.FAMILIES:
            params = {"p": args.p, "n": args.n, "s": args.s}
            if tag == "fig5":
                params = {"p": args.p}
            if any(v is None for k, v in params.items() if k != "s"):
                raise UsageError(f"{tag} needs " + " and ".join(f"--{k}" for k in params if k != "s"))
            if tag != "fig4":
                params.pop("s", None)
            inst = families.generate(tag, **params)
            return inst.graph, inst.metadata()
        if tag == "qobstruction":
            if args.q is None:
                raise UsageError("qobstruction needs --q")
            g = families.gen_qproper_obstruction(args.q, literal=args.literal)
            return g, {"family_tag": tag, "params": {"q": args.q, "literal": args.literal},
                       "n": g.n, "m": g.m}
        maker = {"clique": families.gen_clique, "path": families.gen_path, "star": families.gen_star}[tag]
        if args.k is None:
            raise UsageError(f"{tag} needs --k")
        g = maker(args.k)
        return g, {"family_tag": tag, "params": {"k": args.k}, "n": g.n, "m": g.m}
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_generate(args) -> int:
    g, meta = _instance(args)
    text = {"edgelist": to_edge_list, "g6": lambda x: to_graph6(x) + "\n", "dot": to_dot}[args.format](g)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        Path(args.output + ".meta.json").write_text(_dumps(meta), encoding="utf-8")
    else:
        sys.stdout.write(text)
        print(json.dumps(meta, sort_keys=True), file=sys.stderr)
    return EXIT_OK


def _markdown(rows: list[dict], columns: list[str], color: bool = False) -> str:
    use_color = color and "NO_COLOR" not in os.environ
    lines = ["| " + " | ".join(columns) + " |", "|" + "---|" * len(columns)]
    for row in rows:
        cells = []
        for c in columns:
            val = row.get(c)
            text = json.dumps(val) if isinstance(val, (list, dict)) else str(val)
            if c == "status" and use_color:
                code = {"PASS": "32", "FAIL": "31", "FINDING": "33"}.get(text, "0")
                text = f"\x1b[{code}m{text}\x1b[0m"
            cells.append(text)
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


FAMILY_COLUMNS = ["family", "params", "imp", "expected_imp", "drop", "expected_drop",
                  "spectrum", "critical", "oracle", "status"]


def _suite(args) -> tuple[dict, list[str]]:
    suite = args.suite
    if suite in ("mainthm", "fig2"):
        grid = families.default_grid("fig2", args.pmax)
        rows = verify_family_claims("fig2", grid, workers=args.workers)
        return {"suite": "mainthm", "rows": rows}, FAMILY_COLUMNS
    if suite in ("fig3", "fig4"):
        grid = families.default_grid(suite, args.pmax)
        rows = verify_family_claims(suite, grid, workers=args.workers)
        return {"suite": suite, "rows": rows}, FAMILY_COLUMNS
    if suite == "fig5":
        ps = args.p if args.p else [8, 9, 10]
        rows = verify_family_claims("fig5", [{"p": p} for p in ps], workers=args.workers)
        return {"suite": "fig5", "rows": rows}, FAMILY_COLUMNS
    if suite == "qproper":
        qs = args.q if args.q else [1, 2, 3]
        rows = []
        for q in qs:
            for row in qproper_stability(q, max_n=args.nmax or 7):
                rows.append({"q": q, **row})
        return {"suite": "qproper", "rows": rows}, ["q", "source", "g6", "properness", "deletions", "status"]
    if suite == "thm32":
        graphs = [families.gen_fig2(**params).graph for params in families.default_grid("fig2", args.pmax)]
        scan = theorem32_scan(graphs)
        rows = [{"g6": v["g6"], "spectrum": v["spectrum"], "status": FAIL} for v in scan["violations"]]
        return {"suite": "thm32", "scan": scan, "rows": rows}, ["g6", "spectrum", "status"]
    if suite == "oracle-equivalence":
        rows = oracle_equivalence(args.nmax or 6)
        return {"suite": "oracle-equivalence", "rows": rows}, ["g6", "n", "improper", "proper", "status"]
    if suite == "class-spectrum":
        ps = args.p if args.p else [1, 2]
        rows = [class_spectrum(p, max_n=args.nmax or 7).to_json() for p in ps]
        for row in rows:
            row["status"] = "PASS" if set(row["union_spectrum"]) <= set(range(row["p"])) else FAIL
        return {"suite": "class-spectrum", "rows": rows}, ["p", "union_spectrum", "witnesses", "status"]
    raise UsageError(f"unknown suite {suite!r}")


def cmd_verify(args) -> int:
    report, columns = _suite(args)
    rows = report["rows"]
    report["summary"] = {s: sum(1 for r in rows if r["status"] == s) for s in ("PASS", "FAIL", "FINDING")}
    as_json = _dumps(report)
    table = _markdown(rows, columns, color=sys.stdout.isatty())
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{report['suite']}.json").write_text(as_json, encoding="utf-8")
        (out / f"{report['suite']}.md").write_text(_markdown(rows, columns), encoding="utf-8")
    if args.format == "table":
        sys.stdout.write(table)
    else:
        sys.stdout.write(as_json)
    return EXIT_VERIFY if report["summary"]["FAIL"] else EXIT_OK


def cmd_explore(args) -> int:
    from .explore import conjecture_stats, explore

    if args.store is None:
        raise UsageError("explore needs --store")
    if args.nmax > 9:
        raise GuardExceeded("explore is limited to --nmax 9")
    count = 0
    for _ in explore(args.nmax, args.store, interval_only=args.interval_only, workers=args.workers):
        count += 1
    out = {"new_records": count, "store": str(args.store)}
    if args.stats:
        out["conjecture_stats"] = {str(k): v for k, v in conjecture_stats(args.store).items()}
    sys.stdout.write(_dumps(out))
    return EXIT_OK


def cmd_render(args) -> int:
    from .render import to_svg, to_tikz

    designated = args.designated
    highlight = list(args.highlight or [])
    basepoint = args.basepoint
    if args.family:
        g, meta = _instance(args)
        designated = meta.get("designated_vertex", designated)
        highlight = meta.get("roles", {}).get(RELOCATING.get(args.family, ""), highlight)
        rep = None
    else:
        if args.input is None:
            raise UsageError("render needs --input or --family")
        text = _read_input(args.input)
        if text.lstrip().startswith("{"):
            try:
                rep = IntervalRepresentation.from_json(json.loads(text))
                rep.validate()
            except (ValueError, KeyError) as exc:
                raise UsageError(f"bad representation: {exc}") from exc
            g = None
        else:
            g = parse_graph_text(text)
            rep = None
    if rep is None:
        reason = interval_obstruction(g)
        if reason is not None:
            print(f"not an interval graph: {reason}", file=sys.stderr)
            return EXIT_DOMAIN
        cert = impropriety(g)
        rep = cert.witness
        if basepoint is None and cert.value > 0:
            basepoint = cert.basepoint_witness
    draw = to_tikz if args.format == "tikz" else to_svg
    _emit(draw(rep, basepoint=basepoint, designated=designated, highlight=highlight), args.output)
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = _load_graph(args)
    if g.n > args.guard:
        raise GuardExceeded(f"oracle limited to {args.guard} vertices, got {g.n}")
    try:
        res = oracle_search(g, guard=args.guard)
    except NotIntervalGraph as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_DOMAIN
    _emit(_dumps({"oracle_imp": res.value, "orderings_examined": res.sequences}), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="improperlab", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_input(p, required=True):
        p.add_argument("--input", required=required, help="edge-list or graph6 file, '-' for stdin")
        p.add_argument("--output", help="write result here instead of stdout")
        p.add_argument("--max-vertices", type=int, default=18)

    p = sub.add_parser("analyze", help="impropriety, properness, spectrum and structure of a graph")
    graph_input(p)
    p.add_argument("--time-budget", type=float, default=None, help="seconds per optimisation")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_analyze)

    def family_args(p):
        p.add_argument("--p", type=int)
        p.add_argument("--n", type=int)
        p.add_argument("--s", type=int, help="fig4 singleton count (default: calibrated)")
        p.add_argument("--q", type=int)
        p.add_argument("--k", type=int)
        p.add_argument("--literal", action="store_true",
                       help="qobstruction: clique in place of a leaf instead of the centre")

    p = sub.add_parser("generate", help="emit a construction family instance")
    p.add_argument("family", choices=list(families.FAMILIES) + ["qobstruction", "clique", "path", "star"])
    family_args(p)
    p.add_argument("--format", choices=["edgelist", "g6", "dot"], default="edgelist")
    p.add_argument("--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", help="mainthm | fig3 | fig4 | fig5 | qproper | thm32 | "
                                 "oracle-equivalence | class-spectrum")
    p.add_argument("--pmax", type=int, default=6)
    p.add_argument("--p", type=int, action="append", help="explicit p (repeatable)")
    p.add_argument("--q", type=int, action="append", help="explicit q (repeatable)")
    p.add_argument("--nmax", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.add_argument("--output", help="directory for <suite>.json and <suite>.md")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("explore", help="exhaustive spectra into a resumable JSONL store")
    p.add_argument("--nmax", type=int, default=7)
    p.add_argument("--store", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--interval-only", action="store_true")
    p.add_argument("--stats", action="store_true", help="append conjecture statistics")
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("render", help="draw an optimal representation as SVG or TikZ")
    p.add_argument("--input", help="graph file or representation JSON")
    p.add_argument("--family", choices=list(families.FAMILIES) + ["qobstruction", "clique", "path", "star"])
    family_args(p)
    p.add_argument("--format", choices=["svg", "tikz"], default="svg")
    p.add_argument("--tikz", dest="format", action="store_const", const="tikz")
    p.add_argument("--basepoint", type=int)
    p.add_argument("--designated", type=int)
    p.add_argument("--highlight", type=int, nargs="*")
    p.add_argument("--output")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("oracle", help="brute-force impropriety over endpoint sequences")
    graph_input(p)
    p.add_argument("--guard", type=int, default=ORACLE_GUARD)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    for name in ("workers",):
        if getattr(args, name, 1) is not None and getattr(args, name, 1) < 1:
            print(f"--{name} must be >= 1", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GuardExceeded as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except NotIntervalGraph as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
