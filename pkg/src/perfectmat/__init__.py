"""Internally perfect matroids: internal activity, the internal order, and
certificates for Stanley's pure O-sequence conjecture."""

from .activity import Ordering, OrderedMatroid, StaDecomposition, make_ordered
from .internal_order import TOP, InternalOrder, build, join, leq, meet, principal_chain
from .matroid import Graph, Matroid, contract, delete, dual, from_bases, from_graph, from_matrix, uniform
from .perfection import (
    BasisClass,
    Tag,
    classify_basis,
    decompose_into_principals,
    find_perfect_order,
    is_internally_perfect,
    verify_contraction_theorem,
    verify_deletion_corollary,
    verify_minor_theorem,
)
from .stanley import MonomialVector, h_vector, mu, stanley_certificate

__all__ = [
    "TOP",
    "BasisClass",
    "Graph",
    "InternalOrder",
    "Matroid",
    "MonomialVector",
    "OrderedMatroid",
    "Ordering",
    "StaDecomposition",
    "Tag",
    "build",
    "classify_basis",
    "contract",
    "decompose_into_principals",
    "delete",
    "dual",
    "find_perfect_order",
    "from_bases",
    "from_graph",
    "from_matrix",
    "h_vector",
    "is_internally_perfect",
    "join",
    "leq",
    "make_ordered",
    "meet",
    "mu",
    "principal_chain",
    "stanley_certificate",
    "uniform",
    "verify_contraction_theorem",
    "verify_deletion_corollary",
    "verify_minor_theorem",
]
