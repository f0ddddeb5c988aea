# Tree decompositions: building, checking, and reading/writing PACE .td files.

from polydom import (
    TreeDecomposition,
    decompose_exact,
    decompose_heuristic,
    emit_td,
    parse_td,
    validate_td,
    width,
)
from polydom.generators import complete_graph, grid_graph, partial_ktree, path_graph

g = grid_graph(3, 3)

# Greedy elimination orderings give a valid decomposition every time; the
# width is whatever the heuristic manages.
for strategy in ("min-fill", "min-degree"):
    td = decompose_heuristic(g, strategy)
    print(strategy, "width", width(td), "bags", len(td.bags), "problems", validate_td(g, td))

# For tiny graphs an exhaustive search pins down the true treewidth.
print("exact width of the 3x3 grid:", width(decompose_exact(g)))
print("K4:", width(decompose_heuristic(complete_graph(4))))

# validate_td reports every broken property with a witness instead of
# raising, so a bad decomposition can be inspected.
bad = TreeDecomposition({0: (0, 1), 1: (2,), 2: (0,)}, frozenset({(0, 1), (1, 2)}))
for problem in validate_td(path_graph(3), bad):
    print(problem.kind, problem.witness, "|", problem.message)

# PACE .td text round-trips
g = partial_ktree(12, 2, seed=3)
text = emit_td(decompose_heuristic(g), g.n)
print(text)
assert emit_td(parse_td(text, n=g.n), g.n) == text
