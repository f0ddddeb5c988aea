"""Benchmark harness: solve generated instances with several modes and compare.

Every row reports one (instance, mode) pair. Modes must agree on the answer
for each instance; a disagreement raises :class:`BenchMismatch` after the
rows gathered so far have been written, so the harness doubles as a test.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass, field
from typing import IO, Iterator

from . import generators as gen
from .decomposition import decompose_heuristic
from .graph import Graph, brute_force_counts
from .nice import NiceTree, make_nice
from .table import table_dp_min
from .zeta_solver import SpaceMeter, ZetaEvaluator

COLUMNS = ("family", "n", "m", "k", "d", "mode", "answer", "peak_slots", "wall_time_ms")
FAMILIES = ("path", "cycle", "grid", "pktree")
MODES = ("zeta", "table", "brute")
MAX_N = 400


class BenchMismatch(RuntimeError):
    """Two modes returned different answers for the same instance."""


@dataclass
class BenchSpec:
    """What to generate and how to solve it.

    ``sizes`` are vertex counts, except for ``grid`` where they are column
    counts of a ``rows x size`` grid. ``k`` and ``seeds`` only matter for
    ``pktree`` (random partial k-trees).
    """

    family: str
    sizes: tuple
    modes: tuple = ("zeta", "table")
    k: int = 3
    seeds: tuple = (1,)
    rows: int = 2
    keep: float = 0.7

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        bad = [m for m in self.modes if m not in MODES]
        if bad or not self.modes:
            raise ValueError(f"unknown mode(s) {bad}; choose from {', '.join(MODES)}")
        if not self.sizes:
            raise ValueError("no sizes given")
        for s in self.sizes:
            total = s * self.rows if self.family == "grid" else s
            if s < 1 or total > MAX_N:
                raise ValueError(f"size {s} outside the supported range 1..{MAX_N} vertices")
        if self.family == "cycle" and min(self.sizes) < 3:
            raise ValueError("cycles need at least 3 vertices")
        if self.family == "pktree":
            if not 1 <= self.k <= 8:
                raise ValueError(f"partial k-tree needs 1 <= k <= 8, got {self.k}")
            if min(self.sizes) < self.k + 1:
                raise ValueError(f"partial {self.k}-trees need n >= {self.k + 1}")
            if not 0.0 <= self.keep <= 1.0:
                raise ValueError("keep probability must lie in [0, 1]")


@dataclass
class Instance:
    family: str
    graph: Graph
    nice: NiceTree
    label: str = field(default="")


def instances(spec: BenchSpec) -> Iterator[Instance]:
    """Generated graphs with their natural (or heuristic) decompositions."""
    for size in spec.sizes:
        if spec.family == "path":
            g = gen.path_graph(size)
            yield Instance("path", g, make_nice(gen.balanced_path_td(size), g), f"path n={size}")
        elif spec.family == "cycle":
            g = gen.cycle_graph(size)
            yield Instance("cycle", g, make_nice(gen.balanced_cycle_td(size), g), f"cycle n={size}")
        elif spec.family == "grid":
            g = gen.grid_graph(spec.rows, size)
            yield Instance("grid", g, make_nice(decompose_heuristic(g), g), f"grid {spec.rows}x{size}")
        else:
            for seed in spec.seeds:
                g = gen.partial_ktree(size, spec.k, seed, keep=spec.keep)
                yield Instance("pktree", g, make_nice(decompose_heuristic(g), g),
                               f"pktree n={size} k={spec.k} seed={seed}")


def solve_with(mode: str, inst: Instance) -> tuple[int, int, float]:
    """``(answer, peak_slots, wall_time_ms)`` for one mode."""
    nt, g = inst.nice, inst.graph
    t0 = time.perf_counter()
    if mode == "zeta":
        ev = ZetaEvaluator(nt)
        answer = ev.vector(nt.root, 0, 0).first_nonzero()
        peak = ev.meter.peak_slots
    elif mode == "table":
        meter = SpaceMeter()
        answer = table_dp_min(nt, g, meter=meter)
        peak = meter.peak_slots
    else:
        answer = brute_force_counts(g).first_nonzero()
        peak = g.n + 1
    ms = (time.perf_counter() - t0) * 1000.0
    return answer, peak, ms


def bench_rows(spec: BenchSpec) -> Iterator[dict]:
    for inst in instances(spec):
        answers = {}
        for mode in spec.modes:
            answer, peak, ms = solve_with(mode, inst)
            answers[mode] = answer
            yield {
                "family": inst.family,
                "n": inst.graph.n,
                "m": inst.graph.m,
                "k": inst.nice.width,
                "d": inst.nice.depth,
                "mode": mode,
                "answer": answer,
                "peak_slots": peak,
                "wall_time_ms": f"{ms:.3f}",
            }
        if len(set(answers.values())) > 1:
            detail = ", ".join(f"{m}={a}" for m, a in answers.items())
            raise BenchMismatch(f"{inst.label}: answers disagree ({detail})")


def bench_suite(spec: BenchSpec, out: IO[str]) -> int:
    """Write the CSV for ``spec`` to ``out`` and return the number of rows."""
    writer = csv.DictWriter(out, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    count = 0
    for row in bench_rows(spec):
        writer.writerow(row)
        count += 1
    return count
