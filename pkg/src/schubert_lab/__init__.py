"""Polytopes projecting to Schubert polynomials: Gelfand-Tsetlin polytopes,
their Minkowski sums and flow polytopes, in exact integer arithmetic."""

from .combinatorics import (
    Diagram, ParFamily, Partition, Permutation, ReducedDiagram, avoids_patterns,
    grassmannian_shape, is_column_convex, par_family, reduce_diagram, rothe_diagram,
)
from .lattice import (
    InequalitySystem, LatticePointSet, TrianglePoint, backend_name, enumerate_lattice,
)
from .poly import LaurentPolynomial, demazure, divided_difference, flagged_character, schubert

__version__ = "0.1.0"

__all__ = [
    "Diagram", "ParFamily", "Partition", "Permutation", "ReducedDiagram", "avoids_patterns",
    "grassmannian_shape", "is_column_convex", "par_family", "reduce_diagram", "rothe_diagram",
    "InequalitySystem", "LatticePointSet", "TrianglePoint", "backend_name", "enumerate_lattice",
    "LaurentPolynomial", "demazure", "divided_difference", "flagged_character", "schubert",
]
