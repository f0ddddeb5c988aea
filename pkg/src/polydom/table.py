"""Exponential-space reference dynamic programs over a nice decomposition.

Both programs keep a full table per node, keyed by ``(C, D)`` bitmask pairs
(``3**|bag|`` keys). They exist as oracles and as the memory-hungry foil
for the zeta solver, not for speed.

* :func:`table_dp_min` is a min-plus program in which ``D`` means "must end
  up dominated" and waiting vertices carry no requirement.
* :func:`count_tables` / :func:`direct_counts` count exact traces: ``D`` is
  exactly the set of bag vertices outside ``C`` dominated inside the partial
  graph, and joins add up every pair ``D' | D'' = D``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .graph import CoeffVector, Graph, InstanceTooLarge, to_mask
from .nice import AUX, FORGET, INTRODUCE, JOIN, LEAF, NiceTree
from .zeta_solver import SpaceMeter

TABLE_WIDTH_CAP = 15
DIRECT_COUNTS_CAP = 16
INF = float("inf")


def _submasks(mask: int):
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


def _assignments(bag_mask: int):
    """All disjoint ``(C, D)`` pairs inside ``bag_mask``."""
    for C in _submasks(bag_mask):
        rest = bag_mask & ~C
        for D in _submasks(rest):
            yield C, D


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _aux_dominated(edge, C: int) -> int:
    bu, bv = 1 << edge[0], 1 << edge[1]
    if C & bu and not C & bv:
        return bv
    if C & bv and not C & bu:
        return bu
    return 0


class StateTable(dict):
    """One node's table: ``(C, D) -> value``."""

    def __init__(self, node: int, data=()):
        super().__init__(data)
        self.node = node


def table_dp_min(nt: NiceTree, g: Graph | None = None, meter: SpaceMeter | None = None) -> int:
    """Minimum dominating set size by bottom-up min-plus tables."""
    if nt.width > TABLE_WIDTH_CAP:
        raise InstanceTooLarge(f"table DP capped at width {TABLE_WIDTH_CAP}, got {nt.width}")
    meter = meter if meter is not None else SpaceMeter()
    tables: dict[int, StateTable] = {}
    masks = nt.bag_masks
    for x in nt.postorder():
        node = nt.nodes[x]
        bag = masks[x]
        t = StateTable(x)
        if node.kind == LEAF:
            t[0, 0] = 0
        elif node.kind == AUX:
            for C, D in _assignments(bag):
                dom = _aux_dominated(node.edge, C)
                t[C, D] = _popcount(C) if D & ~dom == 0 else INF
        elif node.kind == INTRODUCE:
            child = tables.pop(node.children[0])
            b = 1 << node.vertex
            for C, D in _assignments(bag):
                if D & b:
                    t[C, D] = INF
                elif C & b:
                    t[C, D] = child[C ^ b, D] + 1
                else:
                    t[C, D] = child[C, D]
        elif node.kind == FORGET:
            child = tables.pop(node.children[0])
            b = 1 << node.vertex
            for C, D in _assignments(bag):
                t[C, D] = min(child[C, D | b], child[C | b, D])
        elif node.kind == JOIN:
            left = tables.pop(node.children[0])
            right_node = nt.nodes[node.children[1]]
            if right_node.kind == AUX:
                tables.pop(node.children[1])
                for C, D in _assignments(bag):
                    dom = _aux_dominated(right_node.edge, C)
                    t[C, D] = left[C, D & ~dom]
            else:
                right = tables.pop(node.children[1])
                for C, D in _assignments(bag):
                    c = _popcount(C)
                    best = INF
                    # monotone tables: splitting D into disjoint halves suffices
                    for D1 in _submasks(D):
                        val = left[C, D1] + right[C, D ^ D1] - c
                        if val < best:
                            best = val
                    t[C, D] = best
        else:
            raise ValueError(f"unknown node kind {node.kind!r}")
        tables[x] = t
        meter.live_slots = sum(len(tab) for tab in tables.values())
        meter.peak_slots = max(meter.peak_slots, meter.live_slots)
        meter.evaluations += 1
    value = tables[nt.root][0, 0]
    return int(value)


def count_tables(nt: NiceTree, keep: bool = True, meter: SpaceMeter | None = None) -> dict:
    """Exact-trace count tables for every node (or only the root unless ``keep``).

    Values are lists indexed by set size, length ``n + 1``. The meter records
    resident coefficient slots and :attr:`SpaceMeter.evaluations` is reused as
    the largest single-node key count.
    """
    if nt.width > TABLE_WIDTH_CAP:
        raise InstanceTooLarge(f"table DP capped at width {TABLE_WIDTH_CAP}, got {nt.width}")
    n1 = nt.n + 1
    meter = meter if meter is not None else SpaceMeter()
    zero = [0] * n1
    tables: dict[int, StateTable] = {}
    done: dict[int, StateTable] = {}
    masks = nt.bag_masks
    aux_under_join = set()
    for node in nt.nodes:
        if node.kind == JOIN and nt.nodes[node.children[1]].kind == AUX:
            aux_under_join.add(node.children[1])
    # vectors are never mutated once stored, so tables may share them
    for x in nt.postorder():
        node = nt.nodes[x]
        bag = masks[x]
        t = StateTable(x)
        if node.kind == LEAF:
            t[0, 0] = [1] + [0] * nt.n
        elif node.kind == AUX:
            if keep or x not in aux_under_join:
                for C, D in _assignments(bag):
                    if D == _aux_dominated(node.edge, C):
                        vec = list(zero)
                        vec[_popcount(C)] = 1
                        t[C, D] = vec
                    else:
                        t[C, D] = zero
        elif node.kind == INTRODUCE:
            child = tables.pop(node.children[0])
            b = 1 << node.vertex
            for C, D in _assignments(bag):
                if D & b:
                    t[C, D] = zero
                elif C & b:
                    t[C, D] = [0] + child[C ^ b, D][:-1]
                else:
                    t[C, D] = child[C, D]
        elif node.kind == FORGET:
            child = tables.pop(node.children[0])
            b = 1 << node.vertex
            for C, D in _assignments(bag):
                p, q = child[C, D | b], child[C | b, D]
                t[C, D] = [u + w for u, w in zip(p, q)]
        elif node.kind == JOIN:
            left = tables.pop(node.children[0])
            right = tables.pop(node.children[1], None)
            right_node = nt.nodes[node.children[1]]
            if right_node.kind == AUX:
                # the auxiliary table is nonzero only at D2 == dom(C)
                u, v = right_node.edge
                bu, bv = 1 << u, 1 << v
                for C, D in _assignments(bag):
                    if C & bu and not C & bv:
                        dom = bv
                    elif C & bv and not C & bu:
                        dom = bu
                    else:
                        t[C, D] = left[C, D]
                        continue
                    if D & dom:
                        t[C, D] = [p + q for p, q in zip(left[C, D], left[C, D ^ dom])]
                    else:
                        t[C, D] = zero
            else:
                _join_counts(t, left, right, bag, zero, n1)
        else:
            raise ValueError(f"unknown node kind {node.kind!r}")
        tables[x] = t
        if keep:
            done[x] = t
        meter.live_slots = n1 * sum(len(tab) for tab in tables.values())
        meter.peak_slots = max(meter.peak_slots, meter.live_slots)
        meter.evaluations = max(meter.evaluations, len(t))
    return done if keep else {nt.root: tables[nt.root]}


def _join_counts(t, left, right, bag, zero, n1):
    # for each C, combine every nonzero pair (D1, D2) into D1 | D2; zero
    # entries are common, so this beats enumerating the splits of each D
    by_c: dict[int, tuple[list, list]] = {}
    for (C, D), vec in left.items():
        if any(vec):
            by_c.setdefault(C, ([], []))[0].append((D, vec))
    for (C, D), vec in right.items():
        if any(vec) and C in by_c:
            by_c[C][1].append((D, vec))
    for C, D in _assignments(bag):
        t[C, D] = list(zero)
    for C, (lefts, rights) in by_c.items():
        c = _popcount(C)
        for D1, a in lefts:
            lo_a = next(i for i, u in enumerate(a) if u)
            for D2, b2 in rights:
                acc = t[C, D1 | D2]
                for i in range(lo_a, n1):
                    u = a[i]
                    if u:
                        for j in range(c, n1 - i + c):
                            w = b2[j]
                            if w:
                                acc[i + j - c] += u * w


def table_counts(nt: NiceTree, meter: SpaceMeter | None = None) -> CoeffVector:
    """Dominating-set counts of every size from the exact-trace tables."""
    return CoeffVector(count_tables(nt, keep=False, meter=meter)[nt.root][0, 0])


class DirectCounts:
    """Memoised exact-trace counts ``a[x, ., C, Y]`` for one nice tree.

    Caps the graph at ``DIRECT_COUNTS_CAP`` vertices; it is an oracle.
    """

    def __init__(self, nt: NiceTree):
        if nt.n > DIRECT_COUNTS_CAP:
            raise InstanceTooLarge(f"direct counts capped at n={DIRECT_COUNTS_CAP}, got n={nt.n}")
        self.nt = nt
        self._tables = count_tables(nt, keep=True)

    def __call__(self, x: int, C: Iterable[int], Y: Iterable[int]) -> CoeffVector:
        Cm, Ym = to_mask(C), to_mask(Y)
        bag = self.nt.bag_masks[x]
        if Cm & Ym or (Cm | Ym) & ~bag:
            raise ValueError("C and Y must be disjoint subsets of the bag")
        return CoeffVector(self._tables[x][Cm, Ym])


@lru_cache(maxsize=8)
def _direct(nt: NiceTree) -> DirectCounts:
    return DirectCounts(nt)


def direct_counts(nt: NiceTree, x: int, C: Iterable[int], Y: Iterable[int]) -> CoeffVector:
    """Entry ``j`` is the number of size-``j`` exact traces at node ``x`` for ``(C, Y)``."""
    return _direct(nt)(x, C, Y)
