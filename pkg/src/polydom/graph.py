"""Simple undirected graphs, text formats, and domination predicates.

Vertices are ``0 .. n-1`` internally. Both supported text formats (PACE
``.gr`` and DIMACS edge) number vertices from 1; the parser shifts ids down
by one and the emitters shift them back up.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from typing import Iterable

BRUTE_FORCE_CAP = 25


class GraphFormatError(ValueError):
    """Raised when graph text cannot be parsed."""


class InstanceTooLarge(ValueError):
    """Raised when an exponential routine is asked to run past its cap."""


class DuplicateEdgeWarning(UserWarning):
    pass


class CoeffVector(tuple):
    """Counts indexed by set size: entry ``j`` belongs to sets of size ``j``."""

    def __new__(cls, coeffs: Iterable[int] = ()):
        return super().__new__(cls, coeffs)

    @classmethod
    def padded(cls, coeffs, length: int) -> "CoeffVector":
        coeffs = list(coeffs)
        if len(coeffs) > length:
            if any(coeffs[length:]):
                raise ValueError("nonzero coefficient beyond requested length")
            coeffs = coeffs[:length]
        return cls(coeffs + [0] * (length - len(coeffs)))

    def first_nonzero(self) -> int | None:
        """Index of the first nonzero entry, or None for the zero vector."""
        for j, c in enumerate(self):
            if c:
                return j
        return None

    def __repr__(self):
        return f"CoeffVector({list(self)!r})"


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices ``0 .. n-1``."""

    n: int
    edges: frozenset = field(default_factory=frozenset)
    adjacency: tuple = field(init=False, repr=False, compare=False)
    masks: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        norm = set()
        for e in self.edges:
            u, v = tuple(e)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {{{u}, {v}}} out of range for n={self.n}")
            norm.add((min(u, v), max(u, v)))
        adj = [set() for _ in range(self.n)]
        for u, v in norm:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "adjacency", tuple(frozenset(a) for a in adj))
        # closed-neighbourhood bitmasks, used by every hot loop
        object.__setattr__(
            self,
            "masks",
            tuple((1 << v) | sum(1 << w for w in adj[v]) for v in range(self.n)),
        )

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(n, frozenset((min(u, v), max(u, v)) for u, v in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def neighbors(self, v: int) -> frozenset:
        return self.adjacency[v]

    def induced_components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.adjacency[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps


def _int_fields(parts, lineno):
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise GraphFormatError(f"line {lineno}: expected integers, got {' '.join(parts)!r}")


def parse_graph(text: str, format: str = "pace-gr") -> Graph:
    """Parse a PACE ``.gr`` (``p tw n m``) or DIMACS (``p edge n m``) graph.

    Comment lines start with ``c``. Duplicate edges, including reversed ones,
    are merged with a :class:`DuplicateEdgeWarning`.
    """
    if format not in ("pace-gr", "dimacs-edge"):
        raise ValueError(f"unknown graph format {format!r}")
    n = None
    seen: set[tuple[int, int]] = set()
    dupes = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if n is not None:
                raise GraphFormatError(f"line {lineno}: second header line")
            want = "tw" if format == "pace-gr" else "edge"
            if len(parts) != 4 or parts[1] != want:
                raise GraphFormatError(f"line {lineno}: malformed header {raw.strip()!r}")
            n, _m = _int_fields(parts[2:], lineno)
            if n < 0 or _m < 0:
                raise GraphFormatError(f"line {lineno}: negative count in header")
            continue
        if n is None:
            raise GraphFormatError(f"line {lineno}: edge before header")
        if format == "dimacs-edge":
            if parts[0] != "e" or len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: expected 'e u v', got {raw.strip()!r}")
            parts = parts[1:]
        elif len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {raw.strip()!r}")
        u, v = _int_fields(parts, lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"line {lineno}: vertex out of range 1..{n}")
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at vertex {u}")
        key = (min(u, v) - 1, max(u, v) - 1)
        if key in seen:
            dupes.append((u, v))
            continue
        seen.add(key)
    if n is None:
        raise GraphFormatError("missing header line")
    if dupes:
        warnings.warn(
            f"merged {len(dupes)} duplicate edge(s), first {dupes[0]}",
            DuplicateEdgeWarning,
            stacklevel=2,
        )
    return Graph(n, frozenset(seen))


def sniff_format(text: str) -> str:
    """Guess the format from the header line."""
    for raw in text.splitlines():
        parts = raw.split()
        if parts and parts[0] == "p" and len(parts) > 1:
            return "dimacs-edge" if parts[1] == "edge" else "pace-gr"
    raise GraphFormatError("missing header line")


def emit_graph(g: Graph, format: str = "pace-gr") -> str:
    if format == "pace-gr":
        lines = [f"p tw {g.n} {g.m}"] + [f"{u + 1} {v + 1}" for u, v in g.sorted_edges()]
    elif format == "dimacs-edge":
        lines = [f"p edge {g.n} {g.m}"] + [f"e {u + 1} {v + 1}" for u, v in g.sorted_edges()]
    else:
        raise ValueError(f"unknown graph format {format!r}")
    return "\n".join(lines) + "\n"


def _check_vertices(g: Graph, xs) -> None:
    for v in xs:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")


def closed_neighborhood(g: Graph, x: Iterable[int]) -> frozenset:
    x = frozenset(x)
    _check_vertices(g, x)
    out = set(x)
    for v in x:
        out |= g.adjacency[v]
    return frozenset(out)


def is_dominating_set(g: Graph, d: Iterable[int]) -> bool:
    return closed_neighborhood(g, d) == frozenset(range(g.n))


def to_mask(xs: Iterable[int]) -> int:
    m = 0
    for v in xs:
        m |= 1 << v
    return m


def from_mask(mask: int) -> list[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def brute_force_counts(g: Graph, exempt: Iterable[int] = (), forced: Iterable[int] = ()) -> CoeffVector:
    """Count dominating sets of every size by enumerating all subsets.

    ``exempt`` vertices need not be dominated; ``forced`` vertices must be in
    the set. Both default to empty, which gives plain domination.
    """
    if g.n > BRUTE_FORCE_CAP:
        raise InstanceTooLarge(f"brute force is capped at n={BRUTE_FORCE_CAP}, got n={g.n}")
    full = (1 << g.n) - 1
    need = full & ~to_mask(exempt)
    force = to_mask(forced)
    counts = [0] * (g.n + 1)
    masks = g.masks
    for size in range(g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            chosen = 0
            covered = 0
            for v in combo:
                chosen |= 1 << v
                covered |= masks[v]
            if chosen & force == force and covered & need == need:
                counts[size] += 1
    return CoeffVector(counts)


def brute_force_min(g: Graph) -> int:
    j = brute_force_counts(g).first_nonzero()
    assert j is not None
    return j
