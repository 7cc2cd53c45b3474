"""Picard groups and Jacobians of directed multigraphs."""
from .abelian import AbelianGroup, from_elementary_divisors, order, parse_group, render, torsion
from .analysis import jacobian, laplacian, picard_group, predicted_rank, scc
from .graph import BIDIRECTIONAL, FORWARD, Arc, ArcKind, DirectedMultigraph, build_graph
from .linalg import IntegerMatrix, determinant, smith_normal_form

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "Arc",
    "ArcKind",
    "BIDIRECTIONAL",
    "DirectedMultigraph",
    "FORWARD",
    "IntegerMatrix",
    "build_graph",
    "determinant",
    "from_elementary_divisors",
    "jacobian",
    "laplacian",
    "order",
    "parse_group",
    "picard_group",
    "predicted_rank",
    "render",
    "scc",
    "smith_normal_form",
    "torsion",
]
