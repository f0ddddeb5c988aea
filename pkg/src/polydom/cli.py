"""Command-line driver.

Exit status is 0 on success, 1 when an input fails validation or a solve
cannot run (bad file, malformed format, size cap), and 2 on usage errors.
The default ring comes from ``POLYDOM_RING`` when ``--ring`` is not given.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
import warnings

from .bench import BenchMismatch, BenchSpec, bench_suite
from .decomposition import (
    decompose_exact,
    decompose_heuristic,
    emit_td,
    parse_td,
    validate_td,
    width,
)
from .graph import (
    DuplicateEdgeWarning,
    GraphFormatError,
    InstanceTooLarge,
    brute_force_counts,
    parse_graph,
    sniff_format,
)
from .nice import make_nice, validate_nice
from .table import count_tables, table_dp_min
from .zeta_solver import (
    SpaceMeter,
    ZetaEvaluator,
    draw_prime,
    extract_witness,
    meter_report,
    solve_min,
)

RING_ENV = "POLYDOM_RING"
EXACT_DECOMPOSITION_CAP = 10


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _load_graph(args):
    text = _read(args.graph)
    fmt = args.format or sniff_format(text)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DuplicateEdgeWarning)
        g = parse_graph(text, fmt)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return g


def _load_td(args, g):
    """The user's decomposition (checked against ``g``) or a constructed one."""
    if getattr(args, "td", None):
        td = parse_td(_read(args.td), n=g.n)
        problems = validate_td(g, td)
        if problems:
            raise InputError("decomposition does not fit the graph: " + "; ".join(p.message for p in problems))
        return td
    if getattr(args, "exact", False):
        if g.n > EXACT_DECOMPOSITION_CAP:
            raise InstanceTooLarge(f"exact decomposition capped at n={EXACT_DECOMPOSITION_CAP}, got n={g.n}")
        return decompose_exact(g)
    return decompose_heuristic(g, args.strategy)


def _ring(args) -> str:
    ring = args.ring or os.environ.get(RING_ENV) or "exact"
    if ring not in ("exact", "modular"):
        raise UsageError(f"unknown ring {ring!r} (from {RING_ENV})" if not args.ring else f"unknown ring {ring!r}")
    return ring


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        sys.stdout.write(text)


def _root_counts(nt, ring, seed):
    """Root count vector plus the meter of the run that produced it."""
    modulus = draw_prime(random.Random(seed)) if ring == "modular" else None
    ev = ZetaEvaluator(nt, modulus=modulus)
    return ev.vector(nt.root, 0, 0), ev.meter


def cmd_solve(args) -> int:
    ring = _ring(args)
    g = _load_graph(args)
    td = _load_td(args, g)
    nt = make_nice(td, g)
    t0 = time.perf_counter()
    meter = SpaceMeter()
    if args.mode == "zeta":
        if ring == "modular":
            answer = solve_min(nt, g, ring="modular", seed=args.seed)
            rep = meter_report()
            meter = SpaceMeter(rep["live_slots"], rep["peak_slots"], rep["evaluations"])
        else:
            vec, meter = _root_counts(nt, ring, args.seed)
            answer = vec.first_nonzero()
    elif args.mode == "table":
        answer = table_dp_min(nt, g, meter=meter)
    else:
        answer = brute_force_counts(g).first_nonzero()
        meter = SpaceMeter(0, g.n + 1, 0)
    wall = time.perf_counter() - t0
    payload = {
        "min_dominating_set_size": answer,
        "width": nt.width,
        "depth": nt.depth,
        "peak_slots": meter.peak_slots,
        "evaluations": meter.evaluations,
        "wall_time": round(wall, 6),
        "mode": args.mode,
        "ring": ring,
        "n": g.n,
        "m": g.m,
    }
    text = f"min dominating set size: {answer}\nwidth {nt.width}, depth {nt.depth}\n"
    if args.meter:
        text += f"peak slots {meter.peak_slots}, evaluations {meter.evaluations}\n"
    text += f"wall time {wall:.3f} s\n"
    _emit(args, payload, text)
    return 0


def cmd_count(args) -> int:
    if _ring(args) != "exact":
        raise UsageError("count needs the exact ring; modular counts are not counts")
    g = _load_graph(args)
    t0 = time.perf_counter()
    if args.mode == "brute":
        counts = list(brute_force_counts(g))
        width = depth = None
        peak = g.n + 1
    else:
        nt = make_nice(_load_td(args, g), g)
        width, depth = nt.width, nt.depth
        if args.mode == "zeta":
            vec, meter = _root_counts(nt, "exact", 0)
            counts = list(vec)
        else:
            meter = SpaceMeter()
            counts = list(count_tables(nt, keep=False, meter=meter)[nt.root][0, 0])
        peak = meter.peak_slots
    wall = time.perf_counter() - t0
    payload = {"counts": counts, "n": g.n, "width": width, "depth": depth,
               "peak_slots": peak, "mode": args.mode, "wall_time": round(wall, 6)}
    text = "".join(f"{j} {c}\n" for j, c in enumerate(counts))
    _emit(args, payload, text)
    return 0


def cmd_witness(args) -> int:
    ring = _ring(args)
    g = _load_graph(args)
    nt = make_nice(_load_td(args, g), g)
    t0 = time.perf_counter()
    chosen = extract_witness(nt, g, ring=ring)
    wall = time.perf_counter() - t0
    payload = {"witness": chosen, "size": len(chosen), "wall_time": round(wall, 6)}
    _emit(args, payload, " ".join(str(v + 1) for v in chosen) + "\n")
    return 0


def cmd_decompose(args) -> int:
    g = _load_graph(args)
    td = _load_td(args, g)
    text = emit_td(td, g.n)
    payload = {"width": width(td), "bags": len(td.bags), "td": text}
    _emit(args, payload, text)
    return 0


def cmd_normalize(args) -> int:
    g = _load_graph(args)
    nt = make_nice(_load_td(args, g), g)
    report = validate_nice(nt, g)
    payload = {"width": report["width"], "depth": report["depth"],
               "node_count": report["node_count"], "nodes": nt.dump().splitlines()}
    _emit(args, payload, nt.dump())
    return 0


def cmd_validate(args) -> int:
    g = _load_graph(args)
    td = parse_td(_read(args.td), n=g.n)
    problems = validate_td(g, td)
    payload = {"ok": not problems, "width": width(td), "violations": [p.as_dict() for p in problems]}
    if not problems:
        nice = validate_nice(make_nice(td, g, check=False), g)
        payload.update(nice_ok=nice["ok"], depth=nice["depth"], node_count=nice["node_count"])
        payload["violations"] += [{"kind": "nice", "message": m} for m in nice["violations"]]
        payload["ok"] = nice["ok"]
    if payload["ok"]:
        text = f"valid: width {width(td)}, nice depth {payload['depth']}\n"
    else:
        text = "".join(f"violation: {v['message']}\n" for v in payload["violations"])
    _emit(args, payload, text)
    return 0 if payload["ok"] else 1


def cmd_oracle(args) -> int:
    g = _load_graph(args)
    counts = list(brute_force_counts(g))
    j = next(i for i, c in enumerate(counts) if c)
    payload = {"min_dominating_set_size": j, "counts": counts, "n": g.n}
    _emit(args, payload, f"min dominating set size: {j}\n" + "".join(f"{i} {c}\n" for i, c in enumerate(counts)))
    return 0


def _int_list(text: str) -> tuple:
    """``"10,20,30"`` or ``"10..50:10"`` (inclusive range with step)."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, _, rest = part.partition("..")
            hi, _, step = rest.partition(":")
            out.extend(range(int(lo), int(hi) + 1, int(step or 1)))
        elif part:
            out.append(int(part))
    return tuple(out)


def cmd_bench(args) -> int:
    try:
        spec = BenchSpec(
            family=args.family,
            sizes=_int_list(args.sizes),
            modes=tuple(m for m in args.modes.split(",") if m),
            k=args.k,
            seeds=_int_list(args.seeds),
            rows=args.rows,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    try:
        bench_suite(spec, sys.stdout)
    except BenchMismatch as exc:
        sys.stdout.flush()
        print(f"mismatch: {exc}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polydom", description="Minimum dominating sets over tree decompositions.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_opts(sp, td=True):
        sp.add_argument("--graph", required=True, help="graph file (.gr or DIMACS edge format)")
        sp.add_argument("--format", choices=("pace-gr", "dimacs-edge"), help="override format detection")
        sp.add_argument("--json", action="store_true", help="one JSON object on stdout")
        if td:
            sp.add_argument("--td", help="PACE .td decomposition to use instead of building one")
            sp.add_argument("--strategy", choices=("min-fill", "min-degree"), default="min-fill")
            sp.add_argument("--exact", action="store_true", help=f"exact treewidth decomposition (n <= {EXACT_DECOMPOSITION_CAP})")

    sp = sub.add_parser("solve", help="minimum dominating set size")
    graph_opts(sp)
    sp.add_argument("--mode", choices=("zeta", "table", "brute"), default="zeta")
    sp.add_argument("--ring", choices=("exact", "modular"))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--meter", action="store_true", help="print space meter in text output")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("count", help="number of dominating sets of every size")
    graph_opts(sp)
    sp.add_argument("--mode", choices=("zeta", "table", "brute"), default="zeta")
    sp.add_argument("--ring", choices=("exact", "modular"))
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("witness", help="one minimum dominating set (1-based ids)")
    graph_opts(sp)
    sp.add_argument("--ring", choices=("exact", "modular"))
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("decompose", help="emit a PACE .td decomposition")
    graph_opts(sp)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("normalize", help="emit the nice decomposition, one node per line")
    graph_opts(sp)
    sp.set_defaults(func=cmd_normalize)

    sp = sub.add_parser("validate", help="check a .gr/.td pair")
    graph_opts(sp, td=False)
    sp.add_argument("--td", required=True)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("oracle", help="brute-force counts (n <= 25)")
    graph_opts(sp, td=False)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("bench", help="CSV benchmark over a generated family")
    sp.add_argument("--family", choices=("path", "cycle", "grid", "pktree"), required=True)
    sp.add_argument("--sizes", required=True, help="e.g. 10,20,40 or 10..50:10")
    sp.add_argument("--modes", default="zeta,table")
    sp.add_argument("--k", type=int, default=3, help="k for partial k-trees")
    sp.add_argument("--seeds", default="1", help="seeds for partial k-trees, e.g. 1..20")
    sp.add_argument("--rows", type=int, default=2, help="grid rows")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except GraphFormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return 1
    except InstanceTooLarge as exc:
        print(f"too large: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
