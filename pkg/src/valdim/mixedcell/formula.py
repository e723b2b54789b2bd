"""Formulas over one valued coordinate x and n ordered-group coordinates.

Atoms compare ``weight * v(f(x)) + a . gamma`` against an exact rational
(or against the top element, which expresses the zero-test f(x) = 0).
Valuations take values in Q extended by INFINITY, so atom truth follows
the extended order: a positive-weight valuation term at a root of f is
infinite, a negative-weight one is minus infinite.

The zero element of the valued coordinate never reaches the group-sort
engine: point loci are split off explicitly during decomposition, and
only there do infinite valuations occur.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .puiseux import INFINITY, FactoredPoly, PuiseuxElement

_REL_FLIP = {">": "<", ">=": "<="}


def _ext_compare(lhs, rel: str, rhs) -> bool:
    """Order comparisons on Q extended by +/- infinity.

    ``lhs`` may be a Fraction, INFINITY, or the string "-inf" (a negative
    weight on an infinite valuation); ``rhs`` is a Fraction or INFINITY.
    """
    if lhs == "-inf":
        if rel == "<":
            return True
        if rel == "<=":
            return True
        return False
    if lhs is INFINITY:
        if rel == "=":
            return rhs is INFINITY
        if rel == "<":
            return False
        return rhs is INFINITY  # <=
    # finite lhs
    if rhs is INFINITY:
        return rel != "="
    if rel == "<":
        return lhs < rhs
    if rel == "<=":
        return lhs <= rhs
    return lhs == rhs


@dataclass(frozen=True)
class MixedAtom:
    """weight * v(poly(x)) + gcoeffs . gamma  REL  rhs.

    ``poly`` is None exactly when ``weight`` is 0 (a pure group-sort
    atom).  ``rel`` is one of <, <=, =; ``rhs`` is a Fraction or
    INFINITY.
    """

    weight: int
    poly: FactoredPoly | None
    gcoeffs: tuple[int, ...]
    rel: str
    rhs: Union[Fraction, object]

    def __post_init__(self):
        if self.rel not in ("<", "<=", "="):
            raise ValueError(f"bad relation {self.rel!r}")
        if (self.weight == 0) != (self.poly is None):
            raise ValueError("poly must be present iff weight is nonzero")
        object.__setattr__(self, "gcoeffs", tuple(int(c) for c in self.gcoeffs))
        if self.rhs is not INFINITY:
            object.__setattr__(self, "rhs", Fraction(self.rhs))

    @property
    def n_gamma(self) -> int:
        return len(self.gcoeffs)

    def holds(self, x: PuiseuxElement, gamma: Sequence[Fraction]) -> bool:
        gpart = sum(c * g for c, g in zip(self.gcoeffs, gamma))
        if self.weight == 0:
            return _ext_compare(Fraction(gpart), self.rel, self.rhs)
        v = self.poly.valuation_at(x)
        if v is INFINITY:
            lhs = INFINITY if self.weight > 0 else "-inf"
        else:
            lhs = self.weight * v + gpart
        return _ext_compare(lhs, self.rel, self.rhs)


class MixedFormula:
    """Base class for Boolean nodes over mixed atoms."""

    n_gamma: int

    def holds(self, x: PuiseuxElement, gamma: Sequence[Fraction]) -> bool:
        raise NotImplementedError

    def atoms(self) -> list[MixedAtom]:
        raise NotImplementedError

    def polys(self) -> list[FactoredPoly]:
        seen: dict[tuple, FactoredPoly] = {}
        for a in self.atoms():
            if a.poly is not None:
                seen[a.poly.key()] = a.poly
        return sorted(seen.values(), key=FactoredPoly.key)

    def __and__(self, other):
        return MAnd.of(self, other)

    def __or__(self, other):
        return MOr.of(self, other)

    def __invert__(self):
        return MNot.of(self)


@dataclass(frozen=True)
class MBool(MixedFormula):
    value: bool
    n_gamma: int = 0

    def holds(self, x, gamma):
        return self.value

    def atoms(self):
        return []


@dataclass(frozen=True)
class MAtom(MixedFormula):
    data: MixedAtom

    @property
    def n_gamma(self) -> int:
        return self.data.n_gamma

    def holds(self, x, gamma):
        return self.data.holds(x, gamma)

    def atoms(self):
        return [self.data]


def _arity(parts) -> int:
    return max((p.n_gamma for p in parts), default=0)


@dataclass(frozen=True)
class MAnd(MixedFormula):
    parts: tuple[MixedFormula, ...]
    n_gamma: int = field(compare=False, default=0)

    @staticmethod
    def of(*parts):
        n = _arity(parts)
        flat = []
        for p in parts:
            if isinstance(p, MBool):
                if not p.value:
                    return MBool(False, n)
                continue
            flat.extend(p.parts if isinstance(p, MAnd) else [p])
        if not flat:
            return MBool(True, n)
        return flat[0] if len(flat) == 1 else MAnd(tuple(flat), n)

    def holds(self, x, gamma):
        return all(p.holds(x, gamma) for p in self.parts)

    def atoms(self):
        return [a for p in self.parts for a in p.atoms()]


@dataclass(frozen=True)
class MOr(MixedFormula):
    parts: tuple[MixedFormula, ...]
    n_gamma: int = field(compare=False, default=0)

    @staticmethod
    def of(*parts):
        n = _arity(parts)
        flat = []
        for p in parts:
            if isinstance(p, MBool):
                if p.value:
                    return MBool(True, n)
                continue
            flat.extend(p.parts if isinstance(p, MOr) else [p])
        if not flat:
            return MBool(False, n)
        return flat[0] if len(flat) == 1 else MOr(tuple(flat), n)

    def holds(self, x, gamma):
        return any(p.holds(x, gamma) for p in self.parts)

    def atoms(self):
        return [a for p in self.parts for a in p.atoms()]


@dataclass(frozen=True)
class MNot(MixedFormula):
    part: MixedFormula

    @staticmethod
    def of(part):
        if isinstance(part, MBool):
            return MBool(not part.value, part.n_gamma)
        if isinstance(part, MNot):
            return part.part
        return MNot(part)

    @property
    def n_gamma(self) -> int:
        return self.part.n_gamma

    def holds(self, x, gamma):
        return not self.part.holds(x, gamma)

    def atoms(self):
        return self.part.atoms()


def matom(
    weight: int,
    poly: FactoredPoly | None,
    gcoeffs: Sequence[int],
    rel: str,
    rhs,
) -> MixedFormula:
    """Atomic mixed formula with the relation normalized into {<, <=, =}.

    Comparisons against INFINITY reduce first: t <= inf is vacuous,
    t > inf impossible, t >= inf is the equality, t != inf the strict
    bound.  For finite right sides >, >= flip signs; != expands into a
    disjunction.
    """
    gcoeffs = tuple(int(c) for c in gcoeffs)
    if rhs is INFINITY:
        if rel in ("<=",):
            return MBool(True, len(gcoeffs))
        if rel == ">":
            return MBool(False, len(gcoeffs))
        if rel == ">=":
            rel = "="
        if rel == "!=":
            rel = "<"
        if weight == 0:
            # finite lhs against infinity
            return MBool(rel == "<", len(gcoeffs))
        return MAtom(MixedAtom(weight, poly, gcoeffs, rel, INFINITY))
    rhs = Fraction(rhs)
    if rel in _REL_FLIP:
        return matom(
            -weight,
            poly if weight != 0 else None,
            tuple(-c for c in gcoeffs),
            _REL_FLIP[rel],
            -rhs,
        )
    if rel == "!=":
        return MOr.of(
            matom(weight, poly, gcoeffs, "<", rhs),
            matom(-weight, poly, tuple(-c for c in gcoeffs), "<", -rhs),
        )
    if rel == "==":
        rel = "="
    if weight == 0 and all(c == 0 for c in gcoeffs):
        zero = Fraction(0)
        val = zero < rhs if rel == "<" else (zero <= rhs if rel == "<=" else zero == rhs)
        return MBool(val, len(gcoeffs))
    return MAtom(MixedAtom(weight, poly if weight != 0 else None, gcoeffs, rel, rhs))
