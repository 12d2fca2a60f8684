"""Exact constructive toolkit for k-matching polytopes of bipartite graphs."""

from .core import (
    BipartiteGraph,
    Decomposition,
    IntegerPoint,
    Matching,
    RationalPoint,
    embed,
    matching_to_matrix,
    support_graph,
)
from .matching import covering_matching, hall_violator, max_matching, triple_combine, union_cover
from .normality import (
    birkhoff_decompose,
    birkhoff_extract,
    fractional_decompose,
    k_extract,
    normality_decompose,
)
from .polytope import CaseTag, MidpointCertificate, is_vertex, membership, midpoint_certificate

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph",
    "CaseTag",
    "Decomposition",
    "IntegerPoint",
    "Matching",
    "MidpointCertificate",
    "RationalPoint",
    "birkhoff_decompose",
    "birkhoff_extract",
    "covering_matching",
    "embed",
    "fractional_decompose",
    "hall_violator",
    "is_vertex",
    "k_extract",
    "matching_to_matrix",
    "max_matching",
    "membership",
    "midpoint_certificate",
    "normality_decompose",
    "support_graph",
    "triple_combine",
    "union_cover",
]
