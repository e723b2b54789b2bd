"""Engine for definable sets over the ordered divisible group (Q, +, <).

Formulas are Boolean combinations of integer-coefficient linear
constraints with exact rational constants.  The module provides
disjunctive normal form, Fourier-Motzkin projection and emptiness,
recursive cell decomposition, the two equivalent dimension
characterizations, topological closure, and the constraint DSL parser.
"""

from .atoms import (
    EQ,
    FALSE,
    LE,
    LT,
    TRUE,
    And,
    Atom,
    BasicSet,
    Bool,
    Formula,
    GammaFormula,
    LinearAtom,
    Not,
    Or,
    atom,
    formula_to_dsl,
    negate_atom,
    nnf,
    normalize_dnf,
)
from .cells import (
    MINUS_INF,
    PLUS_INF,
    AffineBound,
    GammaCell,
    cell_decompose,
    cell_from_json,
    cell_to_json,
    dimension,
    dimension_via_projection,
    has_interior,
)
from .elimination import atoms_empty, exists, is_empty, project, project_basic, sample_point
from .intervals import IntervalType, one_var_canonical
from .parser import parse_formula
from .topology import closure, is_polyhedral

__all__ = [
    "EQ", "FALSE", "LE", "LT", "TRUE",
    "And", "Atom", "BasicSet", "Bool", "Formula", "GammaFormula",
    "LinearAtom", "Not", "Or", "atom", "formula_to_dsl", "negate_atom", "nnf", "normalize_dnf",
    "MINUS_INF", "PLUS_INF", "AffineBound", "GammaCell",
    "cell_decompose", "cell_from_json", "cell_to_json",
    "dimension", "dimension_via_projection", "has_interior",
    "atoms_empty", "exists", "is_empty", "project", "project_basic", "sample_point",
    "IntervalType", "one_var_canonical",
    "parse_formula", "closure", "is_polyhedral",
]
