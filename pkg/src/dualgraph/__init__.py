"""Exact arithmetic for weighted dual graphs of plane compactifications.

Twig (linear chain) calculus with adjoints and inductances, negative
definiteness of intersection forms, adjunction coefficients with the
canonical-type trichotomy, the seven star-shaped boundary families with a
structural recognizer, and exhaustive verification suites over bounded
parameter budgets.  Everything is integer or Fraction arithmetic; no floats.
"""

from .canonical import (
    DNatural,
    KType,
    c_pairing,
    classify_k_type,
    compute_dnatural,
    k_type_report,
)
from .dgn import parse_dgn, serialize_dgn
from .errors import (
    DomainError,
    DualGraphError,
    InternalDefect,
    InvalidFamilyParams,
    NotContractible,
    NotContractibleCurve,
    NotMinimalResolutionGraph,
    OutOfScopeBoundary,
    ParseError,
    WouldBreakChain,
    WouldCreateCycle,
)
from .families import (
    FamilyInstance,
    NotInList,
    build_family,
    classify_family,
    classify_family_all,
    figure1_graph,
    figure1_spec,
    l_bound,
    predicted_k_type,
    trivial_threshold,
    validate_family,
)
from .graphs import (
    DualGraph,
    blow_down,
    chain_graph,
    contract_all,
    graph_d,
    is_forest,
    is_negative_definite,
    is_tree,
    isomorphic,
    shape_report,
    signed_determinant,
)
from .twigs import (
    Twig,
    TwigParts,
    adjoint,
    format_twig,
    inductance,
    is_admissible,
    parse_twig,
    twig_determinant,
    twig_from_inductance,
    twig_parts,
)
from .verify import Budget, verify_all, verify_suite

__all__ = [
    "Budget",
    "DNatural",
    "DomainError",
    "DualGraph",
    "DualGraphError",
    "FamilyInstance",
    "InternalDefect",
    "InvalidFamilyParams",
    "KType",
    "NotContractible",
    "NotContractibleCurve",
    "NotInList",
    "NotMinimalResolutionGraph",
    "OutOfScopeBoundary",
    "ParseError",
    "Twig",
    "TwigParts",
    "WouldBreakChain",
    "WouldCreateCycle",
    "adjoint",
    "blow_down",
    "build_family",
    "c_pairing",
    "chain_graph",
    "classify_family",
    "classify_family_all",
    "classify_k_type",
    "compute_dnatural",
    "contract_all",
    "figure1_graph",
    "figure1_spec",
    "format_twig",
    "graph_d",
    "inductance",
    "is_admissible",
    "is_forest",
    "is_negative_definite",
    "is_tree",
    "isomorphic",
    "k_type_report",
    "l_bound",
    "parse_dgn",
    "parse_twig",
    "predicted_k_type",
    "serialize_dgn",
    "shape_report",
    "signed_determinant",
    "trivial_threshold",
    "twig_determinant",
    "twig_from_inductance",
    "twig_parts",
    "validate_family",
    "verify_all",
    "verify_suite",
]
