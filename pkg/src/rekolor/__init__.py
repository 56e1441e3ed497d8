"""Certified recoloring sequences between proper graph colorings.

Two constructive engines produce explicit walks in the recoloring graph: one
driven by a complete tree decomposition (k >= tw + 2, at most 2(n² + n)
steps) and one driven by greedy colorings (k >= grundy number + 1, at most
4·χ_g·n steps). An exhaustive oracle over all proper colorings supplies exact
distances for small graphs.
"""

__version__ = "0.1.0"

from .decomp import (
    CompleteTreeDecomposition,
    FamilyPartition,
    TreeDecomposition,
    Violation,
    family_partition,
    find_babies,
    is_coherent,
    make_complete,
    restrict,
    treewidth_exact,
    validate_complete,
    validate_tree_decomposition,
)
from .errors import (
    InputError,
    InvariantError,
    ParseError,
    PreconditionError,
    RekolorError,
    ResourceError,
    SequenceError,
)
from .graph import (
    Coloring,
    Graph,
    RecolorSequence,
    RecolorStep,
    is_proper,
    simplify_sequence,
    validate_sequence,
)
from .grundy import (
    chromatic_number_exact,
    greedy_coloring,
    grundy_number_exact,
    grundy_recolor,
    grundy_recolor_to_optimal,
)
from .oracle import (
    EMPTY,
    RecoloringGraphOracle,
    frozen_degree,
    is_k_mixing,
    mixing_number_probe,
    oracle_distance,
    recoloring_diameter,
)
from .twrecolor import (
    clique_recolor,
    eliminate_color,
    lift_sequence,
    make_coherent,
    merge_families,
    tw_recolor,
)

__all__ = [
    "__version__",
    "CompleteTreeDecomposition",
    "FamilyPartition",
    "TreeDecomposition",
    "Violation",
    "family_partition",
    "find_babies",
    "is_coherent",
    "make_complete",
    "restrict",
    "treewidth_exact",
    "validate_complete",
    "validate_tree_decomposition",
    "InputError",
    "InvariantError",
    "ParseError",
    "PreconditionError",
    "RekolorError",
    "ResourceError",
    "SequenceError",
    "Coloring",
    "Graph",
    "RecolorSequence",
    "RecolorStep",
    "is_proper",
    "simplify_sequence",
    "validate_sequence",
    "chromatic_number_exact",
    "greedy_coloring",
    "grundy_number_exact",
    "grundy_recolor",
    "grundy_recolor_to_optimal",
    "EMPTY",
    "RecoloringGraphOracle",
    "frozen_degree",
    "is_k_mixing",
    "mixing_number_probe",
    "oracle_distance",
    "recoloring_diameter",
    "clique_recolor",
    "eliminate_color",
    "lift_sequence",
    "make_coherent",
    "merge_families",
    "tw_recolor",
]
