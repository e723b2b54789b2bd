"""One valued coordinate over finite Puiseux data, with group coordinates.

Provides exact Puiseux arithmetic, the piecewise-monomial decomposition
of the valued line, relative cell decomposition of mixed formulas, the
mixed dimension as a lower set of N^2, exact projection to the group
sort, and the definable bijections the dimension is invariant under.
"""

from .engine import (
    BijectionSpec,
    GammaPermutation,
    GammaTranslation,
    GammaUnimodular,
    KTranslation,
    MixedCell,
    apply_bijection,
    mixed_cell_decompose,
    mixed_cell_to_json,
    mixed_dimension,
    mixed_dimension_via_fibers,
    piece_formulas,
    piece_to_json,
    project_to_gamma,
)
from .formula import (
    MAnd,
    MAtom,
    MBool,
    MNot,
    MOr,
    MixedAtom,
    MixedFormula,
    matom,
)
from .parser import parse_mixed_formula, parse_puiseux
from .pieces import (
    MonomialValuation,
    SwissPiece,
    monomial_decompose,
    piece_k_dimension,
)
from .puiseux import INFINITY, FactoredPoly, PuiseuxElement, valuation

__all__ = [
    "BijectionSpec", "GammaPermutation", "GammaTranslation", "GammaUnimodular",
    "KTranslation", "MixedCell", "apply_bijection", "mixed_cell_decompose", "mixed_cell_to_json",
    "mixed_dimension", "mixed_dimension_via_fibers", "piece_formulas",
    "piece_to_json", "project_to_gamma",
    "MAnd", "MAtom", "MBool", "MNot", "MOr", "MixedAtom", "MixedFormula", "matom",
    "parse_mixed_formula", "parse_puiseux",
    "MonomialValuation", "SwissPiece", "monomial_decompose", "piece_k_dimension",
    "INFINITY", "FactoredPoly", "PuiseuxElement", "valuation",
]
