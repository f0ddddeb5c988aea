"""Polynomial-space counting of dominating sets over a nice decomposition.

For a node ``x`` and disjoint ``C, D`` inside its bag, a *strand* evaluates
the vector ``j -> sum_{Y <= D} a[x, j, C, Y]``, where ``a[x, j, C, Y]``
counts vertex sets ``S`` of size ``j`` in the partial graph below ``x`` with

* ``S`` meeting the bag exactly in ``C``,
* every vertex forgotten below ``x`` dominated by ``S`` (or exempt),
* ``Y`` exactly the bag vertices outside ``C`` that ``S`` dominates.

Summing over ``Y <= D`` means the waiting vertices ``bag - C - D`` must stay
undominated, which turns the union-style join into a pointwise product. A
strand calls its children's strands recursively and keeps nothing once it
returns, so memory is bounded by the recursion depth.

Vectors are stored as windows: entry ``t`` holds size ``|C| + t`` and the
window length is one more than the number of vertices forgotten below ``x``.
Sizes outside the window have count zero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .graph import CoeffVector, Graph, from_mask, to_mask
from .nice import AUX, FORGET, INTRODUCE, JOIN, LEAF, NiceTree

_LEAF, _INTRO, _FORGET, _JOIN, _AUX = range(5)
_KIND_CODE = {LEAF: _LEAF, INTRODUCE: _INTRO, FORGET: _FORGET, JOIN: _JOIN, AUX: _AUX}


class NoRunRecorded(RuntimeError):
    pass


@dataclass
class SpaceMeter:
    """Resident coefficient slots during a run, and the high-water mark."""

    live_slots: int = 0
    peak_slots: int = 0
    evaluations: int = 0

    def report(self) -> dict:
        return {"peak_slots": self.peak_slots, "live_slots": self.live_slots, "evaluations": self.evaluations}


@dataclass(frozen=True)
class Assignment:
    """A strand index: node plus disjoint ``C`` (chosen) and ``D`` (dominated) inside its bag."""

    node: int
    C: tuple
    D: tuple

    def check(self, nt: NiceTree) -> None:
        bag = set(nt.nodes[self.node].bag)
        c, d = set(self.C), set(self.D)
        if c & d:
            raise ValueError(f"C and D overlap in {sorted(c & d)}")
        if not (c | d) <= bag:
            raise ValueError(f"C and D must lie inside bag {sorted(bag)}")


_last_meter: SpaceMeter | None = None


def meter_report() -> dict:
    """Meter of the most recent metered solve in this process."""
    if _last_meter is None:
        raise NoRunRecorded("no run recorded")
    return _last_meter.report()


def _record(meter: SpaceMeter) -> None:
    global _last_meter
    _last_meter = meter


def reset_meter() -> None:
    global _last_meter
    _last_meter = None


class ZetaEvaluator:
    """Strand evaluator bound to one nice tree.

    ``exempt`` vertices need not be dominated and ``forced`` vertices must be
    chosen; both only change how forget nodes combine their child strands.
    With ``modulus`` set all arithmetic is done modulo it.

    Introduce nodes and auxiliary-leaf joins never branch, so each node is
    compiled to the run of such steps below it plus the first branching node;
    one call walks the whole run. Each call counts as one evaluation.
    """

    def __init__(
        self,
        nt: NiceTree,
        modulus: int | None = None,
        exempt: Iterable[int] = (),
        forced: Iterable[int] = (),
    ):
        self.nt = nt
        self.modulus = modulus
        self.meter = SpaceMeter()
        exempt_mask = to_mask(exempt)
        forced_mask = to_mask(forced)
        nodes = nt.nodes
        size = len(nodes)
        kind = [_KIND_CODE[node.kind] for node in nodes]
        first = [node.children[0] if node.children else -1 for node in nodes]
        second = [node.children[1] if len(node.children) > 1 else -1 for node in nodes]
        bit = [1 << node.vertex if node.vertex is not None else 0 for node in nodes]
        # 0 plain, 1 exempt from domination, 2 forced into the set
        fmode = [0] * size
        for x, node in enumerate(nodes):
            if node.kind == FORGET:
                b = bit[x]
                fmode[x] = 2 if forced_mask & b else (1 if exempt_mask & b else 0)
        # window length at x: 1 + vertices forgotten below x
        wlen = [nt.subtree_sizes[x] - len(nodes[x].bag) + 1 for x in range(size)]

        # steps: (True, bit, 0) introduce; (False, u_bit, v_bit) auxiliary edge
        steps: list = [None] * size
        stop = [0] * size
        for x in nt.postorder():
            k = kind[x]
            if k == _INTRO:
                c = first[x]
                steps[x] = ((True, bit[x], 0),) + steps[c]
                stop[x] = stop[c]
            elif k == _JOIN and kind[second[x]] == _AUX:
                c = first[x]
                u, v = nodes[second[x]].edge
                steps[x] = ((False, 1 << u, 1 << v),) + steps[c]
                stop[x] = stop[c]
            else:
                steps[x] = ()
                stop[x] = x
        aux_edge = [
            (1 << node.edge[0], 1 << node.edge[1]) if node.kind == AUX else None for node in nodes
        ]
        mod = modulus
        state = [0, 0, 0]  # live, peak, evaluations

        def ev(x, C, D):
            state[2] += 1
            for is_intro, a, b in steps[x]:
                if is_intro:
                    if C & a:
                        C ^= a
                    elif D & a:
                        # an isolated vertex is never dominated below here
                        D ^= a
                elif C & a:
                    if not C & b and not D & b:
                        return _zeros(wlen[x])
                elif C & b and not D & a:
                    return _zeros(wlen[x])
            y = stop[x]
            k = kind[y]
            if k == _FORGET:
                b = bit[y]
                c = first[y]
                mode = fmode[y]
                if mode == 2:
                    inner = ev(c, C | b, D)
                    out = [0]
                    out += inner
                    state[0] += 1
                else:
                    acc = ev(c, C, D | b)
                    if mode == 0:
                        waiting = ev(c, C, D)
                        acc = [p - q for p, q in zip(acc, waiting)]
                        state[0] -= len(waiting)
                        del waiting
                    inner = ev(c, C | b, D)
                    out = [acc[0]]
                    out += [p + q for p, q in zip(acc[1:], inner)]
                    out.append(inner[-1])
                    state[0] += 1 - len(inner)
                    if mod:
                        out = [w % mod for w in out]
                if state[0] > state[1]:
                    state[1] = state[0]
                return out
            if k == _JOIN:
                left = ev(first[y], C, D)
                if not any(left):
                    state[0] += wlen[y] - len(left)
                    if state[0] > state[1]:
                        state[1] = state[0]
                    return left + [0] * (wlen[y] - len(left))
                right = ev(second[y], C, D)
                nr = len(right)
                out = [0] * (len(left) + nr - 1)
                state[0] += len(out)
                if state[0] > state[1]:
                    state[1] = state[0]
                for i, p in enumerate(left):
                    if p:
                        for j in range(nr):
                            out[i + j] += p * right[j]
                state[0] -= len(left) + nr
                if mod:
                    out = [w % mod for w in out]
                return out
            if k == _LEAF:
                state[0] += 1
                if state[0] > state[1]:
                    state[1] = state[0]
                return [1]
            # standalone auxiliary leaf
            state[0] += 1
            if state[0] > state[1]:
                state[1] = state[0]
            return [_aux_value(aux_edge[y], C, D)]

        def _zeros(length):
            state[0] += length
            if state[0] > state[1]:
                state[1] = state[0]
            return [0] * length

        self._ev = ev
        self._state = state
        self._wlen = wlen

    def _sync(self, released: int = 0) -> None:
        self._state[0] -= released
        live, peak, evals = self._state
        self.meter.live_slots = live
        self.meter.peak_slots = peak
        self.meter.evaluations = evals

    def window(self, x: int, C: int, D: int) -> list:
        """Raw window for bitmask arguments; entry ``t`` is size ``|C| + t``."""
        win = self._ev(x, C, D)
        self._sync(len(win))
        return win

    def vector(self, x: int, C: int, D: int) -> CoeffVector:
        """Full length-``n+1`` vector for bitmask arguments."""
        win = self.window(x, C, D)
        shift = bin(C).count("1")
        return CoeffVector.padded([0] * shift + win, self.nt.n + 1)


def _aux_value(ebits, C, D) -> int:
    """Zeta value of an auxiliary leaf for edge ``{u, v}``.

    The only vertex the edge can dominate outside ``C`` is the endpoint
    opposite a chosen one; the strand is nonzero iff that endpoint (if any)
    lies in ``D`` rather than among the waiting vertices.
    """
    bu, bv = ebits
    cu = C & bu
    cv = C & bv
    if cu and not cv:
        return 1 if D & bv else 0
    if cv and not cu:
        return 1 if D & bu else 0
    return 1


def aux_leaf_plain(edge, C: Iterable[int], Y: Iterable[int]) -> int:
    """Untransformed auxiliary-leaf count: 1 iff ``Y`` is exactly what ``C`` dominates via the edge."""
    u, v = edge
    C, Y = set(C), set(Y)
    dominated = set()
    if u in C and v not in C:
        dominated.add(v)
    if v in C and u not in C:
        dominated.add(u)
    return 1 if Y == dominated else 0


def zeta_counts(
    nt: NiceTree,
    a: Assignment,
    modulus: int | None = None,
    exempt: Iterable[int] = (),
    forced: Iterable[int] = (),
) -> CoeffVector:
    """Zeta-transformed count vector of one strand, padded to length ``n + 1``."""
    a.check(nt)
    ev = ZetaEvaluator(nt, modulus=modulus, exempt=exempt, forced=forced)
    out = ev.vector(a.node, to_mask(a.C), to_mask(a.D))
    _record(ev.meter)
    return out


def _root_vector(nt: NiceTree, modulus=None, exempt=(), forced=()) -> tuple[CoeffVector, SpaceMeter]:
    ev = ZetaEvaluator(nt, modulus=modulus, exempt=exempt, forced=forced)
    vec = ev.vector(nt.root, 0, 0)
    _record(ev.meter)
    return vec, ev.meter


def counts_at_root(nt: NiceTree, g: Graph | None = None, exempt=(), forced=(), ring: str = "exact") -> CoeffVector:
    """Exact number of dominating sets of every size."""
    if ring != "exact":
        raise ValueError("counting needs the exact ring")
    _check_graph(nt, g)
    return _root_vector(nt, None, exempt, forced)[0]


def _check_graph(nt, g):
    if g is not None and g.n != nt.n:
        raise ValueError(f"nice tree is for n={nt.n}, graph has n={g.n}")


def draw_prime(rng: random.Random, bits: int = 62) -> int:
    """Random prime in ``[2**(bits-1), 2**bits)``."""
    from sympy import nextprime

    while True:
        p = nextprime(rng.randrange(1 << (bits - 1), (1 << bits) - (1 << 20)))
        if p < 1 << bits:
            return int(p)


def solve_min(
    nt: NiceTree,
    g: Graph | None = None,
    ring: str = "exact",
    seed: int | None = 0,
    exempt=(),
    forced=(),
) -> int:
    """Minimum dominating set size: the first nonzero entry of the root vector.

    In the modular ring a nonzero residue proves a nonzero count. Entries that
    vanish modulo the first prime are re-checked against a second one, so an
    answer is only too large if both primes divide the true count.
    """
    _check_graph(nt, g)
    if nt.n == 0:
        _root_vector(nt)
        return 0
    if ring == "exact":
        vec, _ = _root_vector(nt, None, exempt, forced)
        j = vec.first_nonzero()
    elif ring == "modular":
        rng = random.Random(seed)
        p1 = draw_prime(rng)
        vec, _ = _root_vector(nt, p1, exempt, forced)
        j = vec.first_nonzero()
        if j != 0:
            p2 = draw_prime(rng)
            while p2 == p1:
                p2 = draw_prime(rng)
            vec2, _ = _root_vector(nt, p2, exempt, forced)
            j2 = vec2.first_nonzero()
            if j2 is not None and (j is None or j2 < j):
                j = j2
    else:
        raise ValueError(f"unknown ring {ring!r}")
    if j is None:
        raise ValueError("no feasible set: forced/exempt constraints cannot be met")
    return j


def extract_witness(nt: NiceTree, g: Graph, ring: str = "exact") -> list[int]:
    """A minimum dominating set, by self-reduction over forced vertices.

    Some vertex of ``N[u]`` must be chosen for the lowest undominated ``u``;
    the first candidate that keeps the optimum reachable is committed.
    """
    _check_graph(nt, g)
    k = solve_min(nt, g, ring=ring)
    chosen: list[int] = []
    covered = 0
    full = (1 << g.n) - 1
    while covered != full:
        u = from_mask(full & ~covered)[0]
        for v in sorted(g.adjacency[u] | {u}):
            if v in chosen:
                continue
            if solve_min(nt, g, ring=ring, forced=chosen + [v]) == k:
                chosen.append(v)
                covered |= g.masks[v]
                break
        else:  # pragma: no cover - the optimum always extends
            raise AssertionError("self-reduction lost the optimum")
    return sorted(chosen)
