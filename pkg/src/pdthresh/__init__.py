"""Positive definiteness of symmetric matrices under hard-thresholding.

Graph utilities, exact and float PD tests, thresholding operators, decision
procedures with witness matrices, and Schur-complement analyzers for
chordal, tree and path patterns.
"""

__version__ = "0.1.0"

from .certificates import (
    GUARANTEED,
    NOT_GUARANTEED,
    Certificate,
    certify_all_subgraph_preservation,
    certify_level_preservation,
    certify_subgraph_preservation,
    certify_universal_preservation,
    dd_guarantee,
)
from .counterexamples import (
    CycleParams,
    a3_example,
    construct_cycle_counterexample,
    construct_level_counterexample,
    cycle_determinant,
    cycle_matrix,
    embed_counterexample,
    non_dd_properties,
    non_dd_witness,
    singular_shift,
)
from .decomposable import (
    ConditionReport,
    analyze,
    chordal_conditions,
    decomposition_condition,
    path_conditions,
    path_sigma,
    tree_conditions,
    tree_edge_order,
)
from .errors import PdThreshError
from .graph import (
    CliqueOrdering,
    Decomposition,
    UndirectedGraph,
    broken_cycle_witness,
    connected_components,
    is_chordal,
    is_tree,
    maximum_cardinality_search,
    perfect_clique_ordering,
    removable_vertex,
)
from .io import read_graph, read_matrix, write_dense, write_graph
from .matrix import (
    PdReport,
    determinant,
    is_positive_definite,
    is_strictly_diagonally_dominant,
    min_eigenvalue,
    schur_complement,
)
from .thresholding import LevelThreshold, threshold_at_level, threshold_by_graph
