# From a tree decomposition to a nice one.
#
# The solver wants a rooted tree with five node kinds: leaf, introduce,
# forget, join and auxiliary leaf. Edges are never added by a node of their
# own. Each edge hangs off a join as an auxiliary leaf whose bag equals the
# join's bag.

from polydom import TreeDecomposition, make_nice, validate_nice
from polydom.generators import balanced_path_td, partial_ktree, path_graph
from polydom.decomposition import decompose_heuristic

g = path_graph(3)
td = TreeDecomposition({0: (0, 1), 1: (1, 2)}, frozenset({(0, 1)}))
nt = make_nice(td, g, root=0)
print(nt.dump())              # one node per line: id kind bag children
print(validate_nice(nt, g))

# depth counts nodes on the longest root-to-leaf path. The solver's running
# time grows with the number of forget nodes along such a path, so the
# root is chosen to keep that small.
g = partial_ktree(30, 3, seed=1)
nt = make_nice(decompose_heuristic(g), g)
rep = validate_nice(nt, g)
print("width", rep["width"], "depth", rep["depth"], "nodes", rep["node_count"], "forget depth", nt.forget_depth())

# A balanced decomposition of a long path keeps the depth logarithmic.
for n in (16, 64, 256):
    nt = make_nice(balanced_path_td(n), path_graph(n))
    print(n, "vertices -> depth", nt.depth, "forget depth", nt.forget_depth())
