"""Minimum dominating sets in polynomial space over tree decompositions.

The solver walks a nice tree decomposition one strand at a time, counting
dominating sets of every size in the zeta domain. Table-based dynamic
programs and brute-force enumeration are provided as reference oracles.
"""

from .algebra import (
    SetFunction,
    mobius_naive,
    mobius_transform,
    pointwise_product,
    union_product,
    zeta_naive,
    zeta_transform,
)
from .decomposition import (
    TreeDecomposition,
    Violation,
    decompose_exact,
    decompose_heuristic,
    emit_td,
    exact_treewidth,
    parse_td,
    validate_td,
    width,
)
from .graph import (
    CoeffVector,
    DuplicateEdgeWarning,
    Graph,
    GraphFormatError,
    InstanceTooLarge,
    brute_force_counts,
    brute_force_min,
    closed_neighborhood,
    emit_graph,
    is_dominating_set,
    parse_graph,
)
from .nice import NiceNode, NiceTree, make_nice, validate_nice
from .table import StateTable, direct_counts, table_counts, table_dp_min
from .zeta_solver import (
    Assignment,
    NoRunRecorded,
    SpaceMeter,
    ZetaEvaluator,
    counts_at_root,
    extract_witness,
    meter_report,
    solve_min,
    zeta_counts,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
