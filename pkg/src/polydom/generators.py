"""Seeded instance generators and hand-built balanced decompositions."""

from __future__ import annotations

import itertools

import numpy as np

from .decomposition import TreeDecomposition
from .graph import Graph


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def grid_graph(rows: int, cols: int) -> Graph:
    def vid(r, c):
        return r * cols + c

    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                edges.append((vid(r, c), vid(r + 1, c)))
    return Graph.from_edges(rows * cols, edges)


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    keep = rng.random(len(pairs)) < p
    return Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


def partial_ktree(n: int, k: int, seed: int, keep: float = 0.7) -> Graph:
    """Random partial k-tree.

    Grow a k-tree from a (k+1)-clique by attaching each new vertex to a
    uniformly chosen k-clique, then keep each edge with probability ``keep``.
    Needs ``n >= k + 1``.
    """
    if k < 1 or n < k + 1:
        raise ValueError(f"partial k-tree needs k >= 1 and n >= k + 1, got n={n}, k={k}")
    rng = np.random.default_rng(seed)
    edges = set(itertools.combinations(range(k + 1), 2))
    cliques = [tuple(c) for c in itertools.combinations(range(k + 1), k)]
    for v in range(k + 1, n):
        base = cliques[int(rng.integers(len(cliques)))]
        for u in base:
            edges.add((u, v))
        for drop in range(k):
            cliques.append(tuple(sorted(base[:drop] + base[drop + 1:] + (v,))))
    ordered = sorted(edges)
    mask = rng.random(len(ordered)) < keep
    return Graph.from_edges(n, [e for e, m in zip(ordered, mask) if m])


def _interval_bags(lo_vertex, hi_vertex, inner, bags, edges, parent):
    """Balanced decomposition of a path ``lo, inner..., hi`` with both ends fixed.

    Every bag holds the two ends plus the midpoint, so width stays 2.
    """
    if not inner:
        node = len(bags)
        bags[node] = (lo_vertex, hi_vertex)
        if parent is not None:
            edges.add((parent, node))
        return
    mid = len(inner) // 2
    m = inner[mid]
    node = len(bags)
    bags[node] = (lo_vertex, m, hi_vertex)
    if parent is not None:
        edges.add((parent, node))
    _interval_bags(lo_vertex, m, inner[:mid], bags, edges, node)
    _interval_bags(m, hi_vertex, inner[mid + 1:], bags, edges, node)


def balanced_path_td(n: int) -> TreeDecomposition:
    """Width-2 decomposition of the path ``0..n-1`` with logarithmic height."""
    if n <= 2:
        return TreeDecomposition({0: tuple(range(n))}, frozenset())
    bags: dict = {}
    edges: set = set()
    _interval_bags(0, n - 1, list(range(1, n - 1)), bags, edges, None)
    return TreeDecomposition(bags, frozenset(edges))


def balanced_cycle_td(n: int) -> TreeDecomposition:
    """Width-2 decomposition of the cycle ``0..n-1``: split at ``0`` and ``n//2``."""
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    h = n // 2
    bags = {0: (0, h)}
    edges: set = set()
    _interval_bags(0, h, list(range(1, h)), bags, edges, 0)
    _interval_bags(h, 0, list(range(h + 1, n)), bags, edges, 0)
    return TreeDecomposition(bags, frozenset(edges))


def path_td(n: int) -> TreeDecomposition:
    """The width-1 chain ``{i, i+1}``."""
    if n <= 2:
        return TreeDecomposition({0: tuple(range(n))}, frozenset())
    return TreeDecomposition({i: (i, i + 1) for i in range(n - 1)}, frozenset((i, i + 1) for i in range(n - 2)))
