"""Exact cohomology of Lie algebras attached to weighted tree diagrams."""

from .diagram import (DiagramError, DiagramSyntaxError, DiagramValidationError, TreeDiagram, builtin_diagram,
                      load_diagram, parse_builtin, parse_diagram)
from .liealg import LieAlgebraModel, MonomialOperator, lie_algebra, solvable_extension
from .complex import BettiTable, betti, betti_per_weight, harmonic_basis

__version__ = "0.1.0"

__all__ = [
    "BettiTable", "DiagramError", "DiagramSyntaxError", "DiagramValidationError", "LieAlgebraModel",
    "MonomialOperator", "TreeDiagram", "betti", "betti_per_weight", "builtin_diagram", "harmonic_basis",
    "lie_algebra", "load_diagram", "parse_builtin", "parse_diagram", "solvable_extension",
]
