"""Exact rational computations on free loop space models.

Subpackages cover: free graded-commutative algebras and derivations (gca),
fraction-free linear algebra (linalg), cochain complexes and induced maps
(homology), minimal models with their loop, based and circle-equivariant
extensions (models), surface word brackets on ribbon graphs (goldman),
bracket/coproduct axiom checkers on finite structure tables (structures),
and coderivation calculus on cofree coalgebras (coderivations).
"""

from .gca import (
    AlgebraError,
    Derivation,
    ElementSyntaxError,
    GradedAlgebra,
    GradedElement,
    graded_commutator,
)
from .models import MinimalModel, loop_model, based_complex, equivariant_model

__all__ = [
    "AlgebraError",
    "Derivation",
    "ElementSyntaxError",
    "GradedAlgebra",
    "GradedElement",
    "graded_commutator",
    "MinimalModel",
    "loop_model",
    "based_complex",
    "equivariant_model",
]
