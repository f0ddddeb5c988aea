"""Tree decompositions: data model, validation, construction and PACE ``.td`` I/O."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .graph import Graph, GraphFormatError

EXACT_TREEWIDTH_CAP = 16


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags keyed by node id, attached to an unrooted tree.

    ``bags`` maps node id to a sorted tuple of vertices; ``tree_edges`` holds
    node-id pairs ``(a, b)`` with ``a < b``.
    """

    bags: dict
    tree_edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "bags", {k: tuple(sorted(set(b))) for k, b in self.bags.items()})
        object.__setattr__(
            self, "tree_edges", frozenset((min(a, b), max(a, b)) for a, b in self.tree_edges)
        )

    @property
    def nodes(self) -> list:
        return sorted(self.bags)

    def adjacency(self) -> dict:
        adj = {x: [] for x in self.bags}
        for a, b in sorted(self.tree_edges):
            adj[a].append(b)
            adj[b].append(a)
        return adj


def width(td: TreeDecomposition) -> int:
    if not td.bags:
        raise ValueError("empty decomposition has no width")
    return max(len(b) for b in td.bags.values()) - 1


@dataclass
class Violation:
    kind: str
    witness: tuple
    message: str

    def as_dict(self):
        return {"kind": self.kind, "witness": list(self.witness), "message": self.message}


def _tree_violations(td: TreeDecomposition) -> list[Violation]:
    out = []
    for a, b in sorted(td.tree_edges):
        if a not in td.bags or b not in td.bags:
            out.append(Violation("unknown-node", (a, b), f"tree edge {a}-{b} names an unknown node"))
    if out:
        return out
    nodes = td.nodes
    if not nodes:
        return [Violation("empty", (), "decomposition has no nodes")]
    if len(td.tree_edges) != len(nodes) - 1:
        out.append(
            Violation(
                "not-a-tree",
                (len(nodes), len(td.tree_edges)),
                f"{len(nodes)} nodes need {len(nodes) - 1} tree edges, found {len(td.tree_edges)}",
            )
        )
    adj = td.adjacency()
    seen = {nodes[0]}
    queue = deque([nodes[0]])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    if len(seen) != len(nodes):
        missing = min(set(nodes) - seen)
        out.append(Violation("disconnected-tree", (nodes[0], missing), f"node {missing} unreachable from node {nodes[0]}"))
    return out


def validate_td(g: Graph, td: TreeDecomposition) -> list[Violation]:
    """Every violated property of ``td`` as a decomposition of ``g``, with witnesses.

    An empty list means ``td`` is valid.
    """
    out = _tree_violations(td)
    if any(v.kind in ("unknown-node", "empty") for v in out):
        return out
    occurs: dict[int, list] = {v: [] for v in range(g.n)}
    for x in td.nodes:
        for v in td.bags[x]:
            if not 0 <= v < g.n:
                out.append(Violation("unknown-vertex", (x, v), f"bag {x} holds vertex {v} outside the graph"))
            else:
                occurs[v].append(x)
    for v in range(g.n):
        if not occurs[v]:
            out.append(Violation("vertex-uncovered", (v,), f"vertex {v} is in no bag"))
    bagsets = {x: set(b) for x, b in td.bags.items()}
    for u, v in g.sorted_edges():
        if not any(u in bagsets[x] and v in bagsets[x] for x in occurs[u]):
            out.append(Violation("edge-uncovered", (u, v), f"edge {{{u}, {v}}} lies in no bag"))
    adj = td.adjacency()
    for v in range(g.n):
        holders = set(occurs[v])
        if len(holders) < 2:
            continue
        comps = []
        left = set(holders)
        while left:
            s = min(left)
            comp = {s}
            stack = [s]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y in left and y not in comp:
                        comp.add(y)
                        stack.append(y)
            left -= comp
            comps.append(sorted(comp))
        if len(comps) > 1:
            out.append(
                Violation(
                    "vertex-disconnected",
                    (v, tuple(comps[0]), tuple(comps[1])),
                    f"bags holding vertex {v} split into {comps[0]} and {comps[1]}",
                )
            )
    return out


def _elimination_order(g: Graph, strategy: str) -> list[int]:
    adj = [set(a) for a in g.adjacency]
    alive = set(range(g.n))
    order = []

    def fill(v):
        nb = sorted(adj[v])
        return sum(1 for i, a in enumerate(nb) for b in nb[i + 1:] if b not in adj[a])

    if strategy == "min-degree":
        score = lambda v: len(adj[v])  # noqa: E731
    elif strategy == "min-fill":
        score = fill
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    while alive:
        v = min(alive, key=lambda w: (score(w), w))
        nb = adj[v]
        for a in nb:
            adj[a] |= nb
            adj[a].discard(a)
            adj[a].discard(v)
        alive.discard(v)
        order.append(v)
    return order


def decomposition_from_order(g: Graph, order: list[int]) -> TreeDecomposition:
    """Tree decomposition induced by eliminating vertices in ``order``.

    Node ``i`` holds the bag of the ``i``-th eliminated vertex. Each bag is
    linked to the bag of its first later-eliminated neighbour; the roots of the
    resulting forest are chained together, which is harmless because their
    bags share no vertex.
    """
    if sorted(order) != list(range(g.n)):
        raise ValueError("order must be a permutation of the vertices")
    if g.n == 0:
        return TreeDecomposition({0: ()}, frozenset())
    pos = {v: i for i, v in enumerate(order)}
    adj = [set(a) for a in g.adjacency]
    bags = {}
    edges = set()
    roots = []
    for i, v in enumerate(order):
        later = adj[v]
        bags[i] = (v, *later)
        if later:
            edges.add((i, min(pos[w] for w in later)))
        else:
            roots.append(i)
        for a in later:
            adj[a] |= later
            adj[a].discard(a)
            adj[a].discard(v)
    for a, b in zip(roots, roots[1:]):
        edges.add((a, b))
    return TreeDecomposition(bags, frozenset(edges))


def decompose_heuristic(g: Graph, strategy: str = "min-fill") -> TreeDecomposition:
    """Greedy elimination-ordering decomposition; ties go to the smallest vertex id."""
    return decomposition_from_order(g, _elimination_order(g, strategy))


def exact_treewidth(g: Graph) -> tuple[int, list[int]]:
    """Treewidth and an optimal elimination ordering, by DP over vertex subsets.

    Exhausts all orderings through their prefix sets, so it is exponential in
    ``n``; capped at ``EXACT_TREEWIDTH_CAP`` vertices.
    """
    n = g.n
    if n > EXACT_TREEWIDTH_CAP:
        raise ValueError(f"exact treewidth capped at n={EXACT_TREEWIDTH_CAP}")
    if n == 0:
        return -1, []
    nbr = [sum(1 << w for w in g.adjacency[v]) for v in range(n)]

    def q_size(s, v):
        # vertices outside s+v reachable from v through s
        seen = 1 << v
        frontier = nbr[v]
        reach = 0
        while frontier:
            b = frontier & -frontier
            frontier ^= b
            if seen & b:
                continue
            seen |= b
            if s & b:
                frontier |= nbr[b.bit_length() - 1] & ~seen
            else:
                reach |= b
        return bin(reach).count("1")

    full = (1 << n) - 1
    inf = n + 1
    best = [inf] * (1 << n)
    choice = [-1] * (1 << n)
    best[0] = -1
    for s in range(1 << n):
        if best[s] == inf:
            continue
        rest = full & ~s
        while rest:
            b = rest & -rest
            rest ^= b
            v = b.bit_length() - 1
            t = s | b
            val = max(best[s], q_size(s, v))
            if val < best[t]:
                best[t] = val
                choice[t] = v
    order = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s &= ~(1 << v)
    order.reverse()
    return best[full], order


def decompose_exact(g: Graph) -> TreeDecomposition:
    return decomposition_from_order(g, exact_treewidth(g)[1])


# PACE .td format ------------------------------------------------------------


def parse_td(text: str, n: int | None = None) -> TreeDecomposition:
    """Parse PACE ``.td`` text; node ids and vertices become 0-based.

    When ``n`` is given the header's vertex count must match it.
    """
    header = None
    bags = {}
    edges = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        try:
            skip = {"s": 2, "b": 1}.get(parts[0], 0)
            nums = [int(p) for p in parts[skip:]]
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected integers in {raw.strip()!r}")
        if parts[0] == "s":
            if header is not None or len(parts) != 5 or parts[1] != "td":
                raise GraphFormatError(f"line {lineno}: malformed header {raw.strip()!r}")
            header = nums
            continue
        if header is None:
            raise GraphFormatError(f"line {lineno}: content before 's td' header")
        nbags, _wp1, nv = header
        if parts[0] == "b":
            if not nums:
                raise GraphFormatError(f"line {lineno}: bag line without id")
            bid, verts = nums[0], nums[1:]
            if not 1 <= bid <= nbags:
                raise GraphFormatError(f"line {lineno}: bag id {bid} out of range 1..{nbags}")
            if bid - 1 in bags:
                raise GraphFormatError(f"line {lineno}: bag {bid} defined twice")
            for v in verts:
                if not 1 <= v <= nv:
                    raise GraphFormatError(f"line {lineno}: bag {bid} references unknown vertex {v}")
            bags[bid - 1] = [v - 1 for v in verts]
        else:
            if len(nums) != 2:
                raise GraphFormatError(f"line {lineno}: expected tree edge 'a b'")
            a, b = nums
            if not (1 <= a <= nbags and 1 <= b <= nbags):
                raise GraphFormatError(f"line {lineno}: tree edge {a} {b} names unknown bag")
            edges.add((a - 1, b - 1))
    if header is None:
        raise GraphFormatError("missing 's td' header")
    nbags, _wp1, nv = header
    if n is not None and nv != n:
        raise GraphFormatError(f"header says {nv} vertices, graph has {n}")
    for i in range(nbags):
        bags.setdefault(i, [])
    td = TreeDecomposition(bags, frozenset(edges))
    tree_problems = _tree_violations(td)
    if tree_problems:
        raise GraphFormatError("node tree invalid: " + "; ".join(v.message for v in tree_problems))
    return td


def emit_td(td: TreeDecomposition, n: int) -> str:
    """PACE ``.td`` text; nodes are renumbered ``1..`` in sorted id order."""
    ids = {x: i + 1 for i, x in enumerate(td.nodes)}
    lines = [f"s td {len(ids)} {width(td) + 1} {n}"]
    for x in td.nodes:
        lines.append(" ".join(["b", str(ids[x])] + [str(v + 1) for v in td.bags[x]]))
    for a, b in sorted((min(ids[a], ids[b]), max(ids[a], ids[b])) for a, b in td.tree_edges):
        lines.append(f"{a} {b}")
    return "\n".join(lines) + "\n"
