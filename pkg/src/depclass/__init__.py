"""depclass: formal tree classes, transforms and statistics for dependency trees."""

from .checkers import (
    ClassificationRecord,
    ColoringBudgetError,
    MultipleGapsError,
    classify,
    gap_degree,
    gap_degree_node,
    gap_inheritance,
    in_wg,
    is_gap_minding,
    is_head_split_wg1,
    is_k_planar,
    is_mild_plus_one_inherit,
    is_one_endpoint_crossing,
    is_planar1,
    is_projective,
    is_root_covered,
    is_well_nested,
    page_number,
    wg_level,
)
from .conllu import (
    ReportBuilder,
    SentenceError,
    SentenceRecord,
    TreebankReport,
    classify_stream,
    parse_conllu,
    sentence_to_conllu,
    write_report,
)
from .genenum import (
    TooLargeError,
    enumerate_trees,
    oracle_attardi_reachable,
    oracle_projective_by_cover,
    oracle_two_planar,
    random_tree,
    verify_lattice,
)
from .transforms import (
    NotBijectiveError,
    Permutation,
    apply_permutation,
    deprojectivize,
    projective_rearrangement,
    pseudo_projectivize,
)
from .transitions import (
    BudgetExceededError,
    Configuration,
    attardi_degree,
    attardi_derivation,
    attardi_reachable,
)
from .tree import (
    Arc,
    CrossingGraph,
    CycleError,
    DepTree,
    EmptySetError,
    IntervalSet,
    InvalidTreeError,
    MultipleRootsError,
    OutOfRangeError,
    arc_covers,
    arcs_cross,
    crossing_count,
    crossing_graph,
    dependency_length,
    interval_decomposition,
    projection,
    validate_tree,
)

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "BudgetExceededError",
    "ClassificationRecord",
    "ColoringBudgetError",
    "Configuration",
    "CrossingGraph",
    "CycleError",
    "DepTree",
    "EmptySetError",
    "IntervalSet",
    "InvalidTreeError",
    "MultipleGapsError",
    "MultipleRootsError",
    "NotBijectiveError",
    "OutOfRangeError",
    "Permutation",
    "ReportBuilder",
    "SentenceError",
    "SentenceRecord",
    "TooLargeError",
    "TreebankReport",
    "apply_permutation",
    "arc_covers",
    "arcs_cross",
    "attardi_degree",
    "attardi_derivation",
    "attardi_reachable",
    "classify",
    "classify_stream",
    "crossing_count",
    "crossing_graph",
    "dependency_length",
    "deprojectivize",
    "enumerate_trees",
    "gap_degree",
    "gap_degree_node",
    "gap_inheritance",
    "in_wg",
    "interval_decomposition",
    "is_gap_minding",
    "is_head_split_wg1",
    "is_k_planar",
    "is_mild_plus_one_inherit",
    "is_one_endpoint_crossing",
    "is_planar1",
    "is_projective",
    "is_root_covered",
    "is_well_nested",
    "oracle_attardi_reachable",
    "oracle_projective_by_cover",
    "oracle_two_planar",
    "page_number",
    "parse_conllu",
    "projection",
    "projective_rearrangement",
    "pseudo_projectivize",
    "random_tree",
    "sentence_to_conllu",
    "validate_tree",
    "verify_lattice",
    "wg_level",
    "write_report",
]
