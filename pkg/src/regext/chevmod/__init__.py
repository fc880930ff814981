"""Simple highest-weight modules, Chevalley bases and the commutant oracle."""

from .character import WeightDiagram, dominant_conjugate, expected_character, is_weight_of
from .chevalley import ChevalleyBasis, structure_constants
from .module import (
    ModuleRealization,
    SpanResult,
    act,
    build_module,
    coroot_coeffs,
    lowering_span,
    root_recipes,
    subalgebra_span,
)
from .oracle import OracleResult, commutant, is_indecomposable_oracle, module_oracle

__all__ = [
    "ChevalleyBasis",
    "ModuleRealization",
    "OracleResult",
    "SpanResult",
    "WeightDiagram",
    "act",
    "build_module",
    "commutant",
    "coroot_coeffs",
    "dominant_conjugate",
    "expected_character",
    "is_indecomposable_oracle",
    "is_weight_of",
    "lowering_span",
    "module_oracle",
    "root_recipes",
    "structure_constants",
    "subalgebra_span",
]
