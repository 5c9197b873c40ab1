"""Zero-free regions for the independence polynomial of bounded-degree graphs."""
from .errors import (
    DomainError,
    InexactDivisionError,
    InputError,
    InvariantError,
    NumericalError,
    ResourceError,
    SingularityError,
    ZeroFreeError,
)
from .graphs import Graph, RootedTree, complete_dary_tree, parse_edge_list, saw_tree
from .poly import Polynomial, brute_force_polynomial, independence_polynomial, tree_polynomial
from .roots import Root, polynomial_roots

__all__ = [
    "DomainError",
    "Graph",
    "InexactDivisionError",
    "InputError",
    "InvariantError",
    "NumericalError",
    "Polynomial",
    "ResourceError",
    "Root",
    "RootedTree",
    "SingularityError",
    "ZeroFreeError",
    "brute_force_polynomial",
    "complete_dary_tree",
    "independence_polynomial",
    "parse_edge_list",
    "polynomial_roots",
    "saw_tree",
    "tree_polynomial",
]
