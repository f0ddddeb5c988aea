# Graphs, closed neighbourhoods and dominating sets.
#
# A set D dominates a graph when every vertex is in D or next to something
# in D. Everything else in the package is about counting such sets quickly,
# so start with the slow, obvious version.

from polydom import brute_force_counts, closed_neighborhood, is_dominating_set, parse_graph
from polydom.generators import cycle_graph, grid_graph

# Graph files use the PACE .gr layout: a "p tw n m" header and 1-based edges.
# Inside the library vertices are 0-based.
p3 = parse_graph("p tw 3 2\n1 2\n2 3\n")
print(p3.n, p3.sorted_edges())

print(closed_neighborhood(p3, {1}))     # the middle vertex sees everything
print(is_dominating_set(p3, {1}))
print(is_dominating_set(p3, {0}))       # vertex 2 is left out

# DIMACS edge files work too
k3 = parse_graph("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n", "dimacs-edge")

# brute_force_counts enumerates every subset. Entry j is the number of
# dominating sets of size j, so the first nonzero entry is the answer we want.
for name, g in [("P3", p3), ("K3", k3), ("C6", cycle_graph(6)), ("3x3 grid", grid_graph(3, 3))]:
    counts = brute_force_counts(g)
    print(f"{name:9s} min={counts.first_nonzero()}  counts={list(counts)}")

# The enumeration is 2^n work and refuses graphs with more than 25 vertices.
