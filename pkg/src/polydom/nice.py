"""Modified nice tree decompositions.

Node kinds are leaf, introduce, forget, join and aux (auxiliary leaf). Leaf
and root bags are empty. Edges never appear on a dedicated node kind: every
graph edge is carried by exactly one auxiliary leaf, which is the second child
of a join whose three bags coincide.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

from .decomposition import TreeDecomposition, validate_td
from .graph import Graph

LEAF = "leaf"
INTRODUCE = "introduce"
FORGET = "forget"
JOIN = "join"
AUX = "aux"
KINDS = (LEAF, INTRODUCE, FORGET, JOIN, AUX)


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: tuple
    children: tuple = ()
    vertex: int | None = None
    edge: tuple | None = None

    def label(self) -> str:
        if self.kind in (INTRODUCE, FORGET):
            return f"{self.kind}({self.vertex})"
        if self.kind == AUX:
            return f"aux({self.edge[0]},{self.edge[1]})"
        return self.kind


@dataclass(frozen=True)
class NiceTree:
    """A rooted modified nice decomposition of a graph on ``n`` vertices.

    Nodes live in a tuple and refer to their children by index. The derived
    per-node arrays (bag masks, subtree vertex counts) are what the solvers
    read.
    """

    nodes: tuple
    root: int
    n: int
    bag_masks: tuple = field(init=False, repr=False, compare=False)
    subtree_sizes: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        masks = []
        for node in self.nodes:
            m = 0
            for v in node.bag:
                m |= 1 << v
            masks.append(m)
        object.__setattr__(self, "bag_masks", tuple(masks))
        # |V_x| bounds the size of any set counted at x
        sizes = [0] * len(self.nodes)
        seen = [0] * len(self.nodes)
        for x in self.postorder():
            node = self.nodes[x]
            m = masks[x]
            for c in node.children:
                m |= seen[c]
            seen[x] = m
            sizes[x] = bin(m).count("1")
        object.__setattr__(self, "subtree_sizes", tuple(sizes))

    def __len__(self):
        return len(self.nodes)

    def postorder(self) -> list[int]:
        out = []
        stack = [(self.root, False)]
        while stack:
            x, done = stack.pop()
            if done:
                out.append(x)
                continue
            stack.append((x, True))
            for c in reversed(self.nodes[x].children):
                stack.append((c, False))
        return out

    @property
    def width(self) -> int:
        return max(len(node.bag) for node in self.nodes) - 1

    @property
    def depth(self) -> int:
        """Number of nodes on the longest root-to-leaf path."""
        depth = [0] * len(self.nodes)
        for x in self.postorder():
            kids = self.nodes[x].children
            depth[x] = 1 + max((depth[c] for c in kids), default=0)
        return depth[self.root]

    def forget_depth(self) -> int:
        """Largest number of forget nodes on a root-to-leaf path."""
        fd = [0] * len(self.nodes)
        for x in self.postorder():
            node = self.nodes[x]
            fd[x] = (node.kind == FORGET) + max((fd[c] for c in node.children), default=0)
        return fd[self.root]

    def introduced_edges(self, x: int) -> frozenset:
        """E_x: the edges carried by auxiliary leaves below ``x``."""
        out = set()
        stack = [x]
        while stack:
            y = stack.pop()
            node = self.nodes[y]
            if node.kind == AUX:
                out.add(node.edge)
            stack.extend(node.children)
        return frozenset(out)

    def subtree_vertices(self, x: int) -> frozenset:
        out = set()
        stack = [x]
        while stack:
            y = stack.pop()
            out.update(self.nodes[y].bag)
            stack.extend(self.nodes[y].children)
        return frozenset(out)

    def dump(self) -> str:
        """Debug form, one node per line: ``id kind bag children``."""
        lines = []
        for x in reversed(self.postorder()):
            node = self.nodes[x]
            bag = "{" + ",".join(map(str, node.bag)) + "}"
            kids = "[" + ",".join(map(str, node.children)) + "]"
            lines.append(f"{x} {node.label()} {bag} {kids}")
        return "\n".join(lines) + "\n"


def estimated_strands(td: TreeDecomposition, root) -> int:
    """Leading-order count of strand evaluations when ``td`` is rooted at ``root``.

    Every forget triples the work below it and joins add their children, so
    a child reached through ``f`` forgets contributes ``3**f`` times its own
    work.
    """
    adj = td.adjacency()
    bags = {x: set(b) for x, b in td.bags.items()}
    order = []
    parent = {root: None}
    stack = [root]
    while stack:
        x = stack.pop()
        order.append(x)
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                stack.append(y)
    work = {}
    for x in reversed(order):
        kids = [y for y in adj[x] if parent.get(y) == x]
        if not kids:
            work[x] = 1
        else:
            work[x] = sum(3 ** len(bags[c] - bags[x]) * work[c] for c in kids)
    return 3 ** len(bags[root]) * work[root]


def choose_root(td: TreeDecomposition):
    """Root minimising :func:`estimated_strands`; ties go to the smallest node id."""
    return min(td.nodes, key=lambda x: (estimated_strands(td, x), x))


def make_nice(td: TreeDecomposition, g: Graph, root=None, check: bool = True) -> NiceTree:
    """Convert ``td`` into a modified nice decomposition of ``g``.

    ``root`` selects the decomposition node to hang the tree from; by default
    the node with the cheapest estimated strand count is used. Each edge is
    attached, as a join with an auxiliary leaf, at the top of the highest
    decomposition node whose bag holds both endpoints.
    """
    if check:
        problems = validate_td(g, td)
        if problems:
            raise ValueError("invalid tree decomposition: " + "; ".join(p.message for p in problems))
    if root is None:
        root = choose_root(td)
    elif root not in td.bags:
        raise ValueError(f"unknown root node {root}")

    adj = td.adjacency()
    parent = {root: None}
    depth = {root: 0}
    order = [root]
    for x in order:
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                depth[y] = depth[x] + 1
                order.append(y)
    children = {x: [] for x in td.bags}
    for x in order[1:]:
        children[parent[x]].append(x)

    bags = {x: tuple(b) for x, b in td.bags.items()}
    bagsets = {x: set(b) for x, b in bags.items()}
    holders: dict[int, list] = {}
    for x in order:
        for v in bags[x]:
            holders.setdefault(v, []).append(x)
    edges_at = {x: [] for x in td.bags}
    for u, v in g.sorted_edges():
        top = min((x for x in holders[u] if v in bagsets[x]), key=lambda x: (depth[x], x))
        edges_at[top].append((u, v))

    nodes: list[NiceNode] = []

    def add(kind, bag, children=(), vertex=None, edge=None):
        nodes.append(NiceNode(kind, tuple(sorted(bag)), tuple(children), vertex, edge))
        return len(nodes) - 1

    def lift(top, have: set, want: set):
        for v in sorted(have - want):
            have = have - {v}
            top = add(FORGET, have, (top,), vertex=v)
        for v in sorted(want - have):
            have = have | {v}
            top = add(INTRODUCE, have, (top,), vertex=v)
        return top

    def join_all(tops, bag):
        if len(tops) == 1:
            return tops[0]
        mid = len(tops) // 2
        return add(JOIN, bag, (join_all(tops[:mid], bag), join_all(tops[mid:], bag)))

    built = {}
    for x in reversed(order):
        want = bagsets[x]
        if children[x]:
            tops = [lift(built.pop(c), bagsets[c], want) for c in children[x]]
        else:
            tops = [lift(add(LEAF, ()), set(), want)]
        top = join_all(tops, want)
        for e in edges_at[x]:
            aux = add(AUX, want, (), edge=e)
            top = add(JOIN, want, (top, aux))
        built[x] = top
    top = lift(built[root], bagsets[root], set())
    return NiceTree(tuple(nodes), top, g.n)


def validate_nice(nt: NiceTree, g: Graph) -> dict:
    """Structural check of a nice decomposition against ``g``.

    Returns ``{"ok", "width", "depth", "node_count", "violations"}``; the
    violations are strings naming the offending node, edge or vertex.
    """
    bad = []
    nodes = nt.nodes
    if not 0 <= nt.root < len(nodes):
        return {"ok": False, "width": None, "depth": None, "node_count": len(nodes),
                "violations": ["root index out of range"]}
    parents = [0] * len(nodes)
    for node in nodes:
        for c in node.children:
            if not 0 <= c < len(nodes):
                bad.append(f"child index {c} out of range")
            else:
                parents[c] += 1
    if bad:
        return {"ok": False, "width": None, "depth": None, "node_count": len(nodes), "violations": bad}
    if parents[nt.root]:
        bad.append("root has a parent")
    reach = nt.postorder() if not bad else []
    if len(reach) != len(set(reach)) or len(reach) != len(nodes):
        bad.append("node graph is not a tree rooted at root")
    for x, p in enumerate(parents):
        if x != nt.root and p != 1:
            bad.append(f"node {x} has {p} parents")
    if bad:
        return {"ok": False, "width": None, "depth": None, "node_count": len(nodes), "violations": bad}

    if nodes[nt.root].bag:
        bad.append(f"nonempty root bag {list(nodes[nt.root].bag)}")
    carried: dict[tuple, int] = {}
    forgets: dict[int, int] = {}
    for x, node in enumerate(nodes):
        bag = set(node.bag)
        if len(bag) != len(node.bag) or list(node.bag) != sorted(node.bag):
            bad.append(f"node {x}: bag not a sorted set")
        if any(not 0 <= v < g.n for v in bag):
            bad.append(f"node {x}: bag vertex out of range")
        kids = [set(nodes[c].bag) for c in node.children]
        if node.kind == LEAF:
            if bag or kids:
                bad.append(f"node {x}: leaf must have empty bag and no children")
        elif node.kind == INTRODUCE:
            if len(kids) != 1 or node.vertex in kids[0] or bag != kids[0] | {node.vertex}:
                bad.append(f"node {x}: bad introduce of {node.vertex}")
        elif node.kind == FORGET:
            if len(kids) != 1 or node.vertex not in kids[0] or bag != kids[0] - {node.vertex}:
                bad.append(f"node {x}: bad forget of {node.vertex}")
            forgets[node.vertex] = forgets.get(node.vertex, 0) + 1
        elif node.kind == JOIN:
            if len(kids) != 2 or kids[0] != bag or kids[1] != bag:
                bad.append(f"node {x}: join children bags differ")
        elif node.kind == AUX:
            e = node.edge
            if kids:
                bad.append(f"node {x}: auxiliary leaf has children")
            if e is None or len(e) != 2 or not set(e) <= bag:
                bad.append(f"node {x}: auxiliary leaf edge {e} not inside its bag")
            else:
                key = (min(e), max(e))
                if key not in g.edges:
                    bad.append(f"node {x}: auxiliary leaf carries non-edge {key}")
                carried[key] = carried.get(key, 0) + 1
        else:
            bad.append(f"node {x}: unknown kind {node.kind!r}")
    for e, k in sorted(carried.items()):
        if k > 1:
            bad.append(f"edge {e} introduced twice" if k == 2 else f"edge {e} introduced {k} times")
    for e in g.sorted_edges():
        if e not in carried:
            bad.append(f"edge {e} never introduced")
    for v in range(g.n):
        k = forgets.get(v, 0)
        if k != 1:
            bad.append(f"vertex {v} forgotten {k} times")
    width = max(len(node.bag) for node in nodes) - 1 if nodes else None
    return {
        "ok": not bad,
        "width": width,
        "depth": nt.depth,
        "node_count": len(nodes),
        "violations": bad,
    }


sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
