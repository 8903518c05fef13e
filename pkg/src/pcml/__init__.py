"""Partially commutative metabelian Lie rings over the integers.

A finite simple graph G on vertices x1..xn defines the ring M(X; G) by
imposing [x_i, x_j] = 0 exactly for the edges of G.  This package computes
canonical forms and brackets in M(X; G), the polynomial action on the
derived subring, annihilator and centralizer descriptions with exact
decision procedures, graph-driven homomorphisms, and the universal
equivalence of tree-defined rings, with an independent integer-linear-algebra
coordinate model used for certification throughout.
"""

from .errors import (
    AdjacentPair,
    DegreeMismatch,
    InvalidInput,
    InvalidMapSpec,
    NoNonEndpoint,
    NotAForest,
    NotATree,
    NotInDerivedSubalgebra,
    ParseError,
    PcmlError,
    PhiSearchExhausted,
    SemanticError,
    TooSmall,
    ZeroCoefficient,
)
from .freemetab import (
    CommPoly,
    LiePoly,
    compare_std,
    free_bracket,
    free_normal_form,
    is_torsion_pair,
    iter_multidegrees,
    letters_of,
    mdeg,
    mdeg_key,
    module_action,
    multidegrees_up_to,
    std_key,
)
from .graph import (
    Graph,
    classify_vertices,
    connected_components,
    format_graph,
    induced_subgraph,
    is_forest,
    is_tree,
    parse_graph,
    relabel_graph,
    simple_paths,
    t_prime,
    t_star,
    tree_canonical_form,
)
from .oracle import (
    QuotientComponent,
    abs_det,
    action_matrix,
    ambient_basis,
    build_component,
    coordinates,
    hermite_normal_form,
    kernel_basis,
    kernel_of_action,
    kernel_of_bracket_map,
    shifted_delta,
    smith_invariants,
)
from .parsing import (
    format_comm,
    format_lie,
    format_mdeg,
    format_monomial,
    format_word,
    lie_poly,
    parse_comm,
    parse_lie,
)
from .pcalg import (
    GraphHom,
    GraphMapSpec,
    IdentifyRule,
    PCAlgebra,
    apply_hom,
    build_hom,
    default_phi_config,
    find_injective_phi,
    identical_simplification,
    identification,
    parse_map_spec,
    phi_closure,
    phi_map,
    projection,
)
from .structure import (
    CentralizerDescription,
    Conjunct,
    PathIdeal,
    WitnessReport,
    annihilator_generators,
    centralizer_description,
    centralizer_intersection_check,
    in_annihilator,
    in_centralizer,
    phi_formula_witness,
    two_nonendpoint_witness,
)
from .equivalence import (
    EquivalenceVerdict,
    decide_universal_equivalence,
    equivalence_classes,
)

__version__ = "0.1.0"

__all__ = [
    "AdjacentPair",
    "CentralizerDescription",
    "CommPoly",
    "DegreeMismatch",
    "EquivalenceVerdict",
    "Graph",
    "GraphHom",
    "GraphMapSpec",
    "IdentifyRule",
    "InvalidInput",
    "InvalidMapSpec",
    "LiePoly",
    "NoNonEndpoint",
    "NotAForest",
    "NotATree",
    "NotInDerivedSubalgebra",
    "PCAlgebra",
    "ParseError",
    "PathIdeal",
    "PcmlError",
    "PhiSearchExhausted",
    "QuotientComponent",
    "SemanticError",
    "TooSmall",
    "WitnessReport",
    "ZeroCoefficient",
    "Conjunct",
    "abs_det",
    "action_matrix",
    "ambient_basis",
    "annihilator_generators",
    "apply_hom",
    "build_component",
    "build_hom",
    "centralizer_description",
    "centralizer_intersection_check",
    "classify_vertices",
    "compare_std",
    "connected_components",
    "coordinates",
    "decide_universal_equivalence",
    "default_phi_config",
    "equivalence_classes",
    "find_injective_phi",
    "format_comm",
    "format_graph",
    "format_lie",
    "format_mdeg",
    "format_monomial",
    "format_word",
    "free_bracket",
    "free_normal_form",
    "hermite_normal_form",
    "identical_simplification",
    "identification",
    "in_annihilator",
    "in_centralizer",
    "induced_subgraph",
    "is_forest",
    "is_torsion_pair",
    "is_tree",
    "iter_multidegrees",
    "kernel_basis",
    "kernel_of_action",
    "kernel_of_bracket_map",
    "letters_of",
    "lie_poly",
    "mdeg",
    "mdeg_key",
    "module_action",
    "multidegrees_up_to",
    "parse_comm",
    "parse_graph",
    "parse_lie",
    "parse_map_spec",
    "phi_closure",
    "phi_formula_witness",
    "phi_map",
    "projection",
    "relabel_graph",
    "shifted_delta",
    "simple_paths",
    "smith_invariants",
    "std_key",
    "t_prime",
    "t_star",
    "tree_canonical_form",
    "two_nonendpoint_witness",
]
