"""Command-line interface.

Exit codes: 0 clean, 1 violation found, 2 input error, 3 infeasible or
timeout-dominated run.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path
from typing import Iterator

from bkgraph import _core
from bkgraph.generators import SamplerConfig, SamplerInfeasible, enumerate_all, sample_class_member
from bkgraph.graph import (
    Coloring,
    Graph,
    Graph6Error,
    GraphError,
    delete_vertex,
    read_graph6_lines,
    to_graph6,
)
from bkgraph.kempe import (
    ConfigError,
    apply_rules,
    audit_neighborhood,
    audit_md,
    extract_config,
)
from bkgraph.recognizers import CLASS_PATTERNS, parse_pattern, recognize
from bkgraph.solvers import (
    SolverTimeout,
    VerificationRecord,
    chromatic_number,
    clique_number,
    is_k_colorable,
    verify_bk,
)
from bkgraph.sweep import SweepConfig, run_sweep

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_INFEASIBLE = 3


class InputError(Exception):
    pass


def _default_budget_ms() -> float:
    raw = os.environ.get("BK_BUDGET_MS")
    if raw is None:
        return 10_000.0
    try:
        return float(raw)
    except ValueError:
        raise InputError(f"BK_BUDGET_MS must be a number, got {raw!r}") from None


def _read_graphs(source: str) -> Iterator[tuple[str, Graph]]:
    """``-`` reads stdin, an existing path reads a corpus file, anything else is graph6."""
    try:
        if source == "-":
            lines = sys.stdin.readlines()
        elif Path(source).is_file():
            lines = Path(source).read_text(encoding="ascii", errors="replace").splitlines()
        else:
            lines = [source]
        for _, g in read_graph6_lines(lines):
            yield to_graph6(g).decode() if g.n <= 62 else "", g
    except (Graph6Error, GraphError) as exc:
        raise InputError(str(exc)) from exc


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    v = int(text)
    return v, v


# ---------------------------------------------------------------- commands


def cmd_recognize(args) -> int:
    try:
        patterns = [parse_pattern(t) for t in args.patterns.split(",") if t.strip()]
    except GraphError as exc:
        raise InputError(str(exc)) from exc
    for name, g in _read_graphs(args.input):
        rep = recognize(g, patterns)
        if args.format == "json":
            print(json.dumps({"graph6": name, **rep.to_dict()}))
        else:
            parts = [f"{k}={'FREE' if w is None else ','.join(map(str, w))}" for k, w in rep.verdicts.items()]
            print(f"{name}\t{'member' if rep.member else 'non-member'}\t" + "\t".join(parts))
    return EXIT_OK


def cmd_omega(args) -> int:
    for name, g in _read_graphs(args.input):
        omega, mask = clique_number(g)
        clique = [v for v in range(g.n) if mask >> v & 1]
        if args.format == "json":
            print(json.dumps({"graph6": name, "omega": omega, "clique": clique}))
        else:
            print(f"{name},{omega}")
    return EXIT_OK


def cmd_chi(args) -> int:
    budget = args.budget_ms / 1000.0
    code = EXIT_OK
    for name, g in _read_graphs(args.input):
        try:
            chi, col = chromatic_number(g, budget)
            row = {"graph6": name, "chi": chi, "coloring": list(col.colors), "status": "EXACT"}
        except SolverTimeout:
            row = {"graph6": name, "chi": None, "coloring": None, "status": "TIMEOUT"}
            code = EXIT_INFEASIBLE
        if args.format == "json":
            print(json.dumps(row))
        else:
            print(f"{name},{'' if row['chi'] is None else row['chi']},{row['status']}")
    return code


def _emit_records(records: list[VerificationRecord], fmt: str) -> None:
    if fmt == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(VerificationRecord.CSV_COLUMNS)
        for r in records:
            w.writerow(r.csv_row())
    else:
        for r in records:
            d = r.to_dict()
            if not r.in_hypothesis:
                d["verdict"] = "N/A"
            elif r.status != "EXACT":
                d["verdict"] = "TIMEOUT"
            else:
                d["verdict"] = "HOLDS" if r.holds else "VIOLATION"
            print(json.dumps(d))


def cmd_verify(args) -> int:
    budget = args.budget_ms / 1000.0
    records = []
    for name, g in _read_graphs(args.input):
        rec = verify_bk(g, budget)
        rec.graph6 = name
        records.append(rec)
    _emit_records(records, args.format)
    if any(r.violation for r in records):
        return EXIT_VIOLATION
    if records and sum(r.status != "EXACT" for r in records) * 2 > len(records):
        return EXIT_INFEASIBLE
    return EXIT_OK


def cmd_sweep(args) -> int:
    try:
        n_min, n_max = _parse_range(args.n)
        d_min, d_max = _parse_range(args.delta)
    except ValueError as exc:
        raise InputError(f"bad range: {exc}") from exc
    cfg = SweepConfig(
        seed=args.seed,
        count=args.count,
        n_min=n_min,
        n_max=n_max,
        delta_min=d_min,
        delta_max=d_max,
        member_filter=not args.no_filter,
        budget_s=args.budget_ms / 1000.0,
        burn_in_factor=args.burn_in_factor,
        jobs=args.jobs,
    )
    if n_max < d_min + 1 or d_min > d_max or n_min > n_max:
        print(f"infeasible configuration: n {args.n}, delta {args.delta}", file=sys.stderr)
        return EXIT_INFEASIBLE
    report = run_sweep(cfg)
    if args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(VerificationRecord.CSV_COLUMNS + ("member", "bk_status"))
        for row in report.rows:
            if "infeasible" in row:
                continue
            rec = VerificationRecord.from_dict(row)
            w.writerow(rec.csv_row() + [str(rec.member).lower(), rec.extra["bk_status"]])
        print("# " + json.dumps(report.aggregate), file=sys.stderr)
    else:
        text = json.dumps(report.to_dict(), indent=None if args.compact else 2)
        if args.out:
            Path(args.out).write_text(text + "\n")
        else:
            print(text)
    agg = report.aggregate
    print(
        f"sweep: {agg['graphs']} graphs, {agg['exact']} exact, {agg['timeouts']} timeouts, "
        f"{agg['violations']} violations, {len(report.anomalies)} bk_color anomalies",
        file=sys.stderr,
    )
    return report.exit_code


def _profile_dict(p) -> dict:
    return {
        "vertex": p.vertex,
        "color": p.own,
        "missing": sorted(p.missing),
        "unique": {str(c): v for c, v in p.unique.items()},
        "repeat": {str(c): list(vs) for c, vs in p.repeat.items()},
    }


def cmd_audit(args) -> int:
    graphs = list(_read_graphs(args.input))
    if len(graphs) != 1:
        raise InputError(f"audit expects exactly one graph, got {len(graphs)}")
    _, g = graphs[0]
    u = args.u
    if not 0 <= u < g.n:
        raise InputError(f"vertex {u} out of range")
    k = args.k if args.k is not None else g.degree(u) - 1
    if args.coloring:
        try:
            cols = [int(t) for t in args.coloring.split(",")]
        except ValueError:
            raise InputError("--coloring must be comma-separated integers") from None
        if len(cols) != g.n:
            raise InputError(f"--coloring has {len(cols)} entries, graph has {g.n} vertices")
        cols[u] = 0
    else:
        h = delete_vertex(g, u)
        found = is_k_colorable(h, k, args.budget_ms / 1000.0)
        if found is None:
            raise InputError(f"G - {u} has no {k}-coloring")
        cols = list(found.colors)
        cols.insert(u, 0)
    try:
        cfg = extract_config(g, Coloring(tuple(cols), k), u, k)
    except (ConfigError, GraphError) as exc:
        raise InputError(f"no valid (u, phi) at vertex {u}: {exc}") from exc
    if cfg is None:
        raise InputError(f"no valid (u, phi) shape at vertex {u}")
    nb = audit_neighborhood(cfg)
    md = audit_md(cfg)
    outcome = apply_rules(cfg)
    paths = {f"{i},{j}": v["path"] for (i, j), v in nb["b"].items()}
    report = {
        "config": cfg.to_dict(),
        "profiles": {f"u{i}": _profile_dict(cfg.profile(cfg.ui(i))) for i in range(1, cfg.k)}
        | {"x": _profile_dict(cfg.profile(cfg.x)), "y": _profile_dict(cfg.profile(cfg.y))},
        "missing_color_at": [f"u{i}" for i in nb["a"]],
        "ij_paths": paths,
        "odd_holes": {f"{i},{j}": v["odd_hole"] for (i, j), v in nb["b"].items()},
        "j_vertex_condition": {f"{i},{j}": v for (i, j), v in nb["c"].items()},
        "md": md.to_dict(),
        "rule": {
            "status": outcome.status.value,
            "rule": outcome.rule,
            "move": outcome.move,
            "trace": [s.to_dict() for s in outcome.trace],
            "coloring": list(outcome.coloring.colors) if outcome.coloring else None,
        },
    }
    print(json.dumps(report, indent=2))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    try:
        for g in enumerate_all(args.n, allow_large=args.allow_large):
            print(to_graph6(g).decode())
    except GraphError as exc:
        raise InputError(str(exc)) from exc
    return EXIT_OK


def cmd_sample(args) -> int:
    d_min, d_max = _parse_range(args.delta)
    cfg = SamplerConfig(
        n=args.n,
        delta_min=d_min,
        delta_max=d_max,
        seed=args.seed,
        burn_in=args.burn_in,
        member_filter=not args.no_filter,
    )
    try:
        g = sample_class_member(cfg)
    except GraphError as exc:
        raise InputError(str(exc)) from exc
    except SamplerInfeasible as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INFEASIBLE
    print(to_graph6(g).decode())
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    budget = _default_budget_ms()
    p = argparse.ArgumentParser(prog="bkgraph", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"bkgraph 0.1.0 ({_core.BACKEND} kernels)")
    sub = p.add_subparsers(dest="command", required=True)

    def add_input(sp):
        sp.add_argument("input", help="graph6 string, corpus file path, or '-' for stdin")

    sp = sub.add_parser("recognize", help="induced pattern verdicts")
    add_input(sp)
    sp.add_argument("--patterns", default=",".join(x.name.lower() for x in CLASS_PATTERNS))
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_recognize)

    for name, fn, fmts in (("chi", cmd_chi, ("json", "csv")), ("omega", cmd_omega, ("json", "csv"))):
        sp = sub.add_parser(name, help=f"exact {name}")
        add_input(sp)
        sp.add_argument("--format", choices=fmts, default="json")
        sp.add_argument("--budget-ms", type=float, default=budget)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("verify", help="Borodin-Kostochka record per graph")
    add_input(sp)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--budget-ms", type=float, default=budget)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", help="sample, verify and bk_color many graphs")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--n", default="12..40")
    sp.add_argument("--delta", default="9..12")
    sp.add_argument("--no-filter", action="store_true", help="drop the class membership filter")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--budget-ms", type=float, default=budget)
    sp.add_argument("--burn-in-factor", type=int, default=25, help="burn-in = factor * n^2 proposals")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--compact", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("audit", help="(u, phi) audit and first applicable rule")
    add_input(sp)
    sp.add_argument("--u", type=int, required=True)
    sp.add_argument("--k", type=int, default=None, help="palette size (default deg(u) - 1)")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--coloring", help="comma-separated colors, one per vertex (u's entry ignored)")
    group.add_argument("--color", action="store_true", help="compute a coloring of G - u")
    sp.add_argument("--budget-ms", type=float, default=budget)
    sp.set_defaults(func=cmd_audit)

    sp = sub.add_parser("enumerate", help="one graph6 line per isomorphism class")
    sp.add_argument("n", type=int)
    sp.add_argument("--allow-large", action="store_true")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("sample", help="one sampled graph as graph6")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--delta", default="9")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--burn-in", type=int, default=0)
    sp.add_argument("--no-filter", action="store_true")
    sp.set_defaults(func=cmd_sample)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
