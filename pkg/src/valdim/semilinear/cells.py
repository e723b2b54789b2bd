"""Recursive cell decomposition of semilinear sets over (Q, +, <).

A cell with signature (i_1, ..., i_n) in {0,1}^n is built coordinate by
coordinate: coordinate k is either the graph of an affine bound over the
earlier coordinates (i_k = 0) or an open band between two such bounds,
possibly infinite (i_k = 1).  The dimension of a cell is the sum of its
signature.

The decomposition refines the arrangement of every atom of the input
formula: the last coordinate is sliced along the bound functions solved
out of the atoms mentioning it, uniformly over a recursive decomposition
of the base that keeps the relative order of those bounds constant.  On
each resulting cell every atom has constant truth value, so a formula is
decomposed by keeping the cells whose sample point satisfies it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence, Union

from ..lowerset import NEG_INF
from .atoms import (
    EQ,
    LT,
    Atom,
    BasicSet,
    Formula,
    LinearAtom,
    atom,
    normalize_dnf,
)
from .elimination import is_empty, project_basic


class _Inf:
    """Signed infinity marker used as a missing band bound."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __repr__(self):
        return "PLUS_INF" if self.sign > 0 else "MINUS_INF"


PLUS_INF = _Inf(1)
MINUS_INF = _Inf(-1)


@dataclass(frozen=True)
class AffineBound:
    """Affine function (coeffs . x + const) / div over earlier coordinates.

    ``div`` is a positive integer; divisibility of the group makes the
    division total.  Stored in reduced form so equal functions compare
    equal.
    """

    coeffs: tuple[int, ...]
    const: Fraction
    div: int = 1

    def __post_init__(self):
        if self.div < 1:
            raise ValueError("divisor must be a positive integer")
        g = self.div
        for c in self.coeffs:
            g = gcd(g, abs(c))
        if g > 1:
            object.__setattr__(self, "coeffs", tuple(c // g for c in self.coeffs))
            object.__setattr__(self, "const", Fraction(self.const, g))
            object.__setattr__(self, "div", self.div // g)
        else:
            object.__setattr__(self, "const", Fraction(self.const))

    def value(self, prefix: Sequence[Fraction]) -> Fraction:
        acc = self.const
        for c, v in zip(self.coeffs, prefix):
            acc += c * v
        return Fraction(acc, self.div)

    def key(self) -> tuple:
        return (self.coeffs, self.const, self.div)


Bound = Union[AffineBound, _Inf]
#: Per-coordinate data: an AffineBound for a graph coordinate, or a
#: (lower, upper) pair for a band coordinate.
CoordSpec = Union[AffineBound, tuple[Bound, Bound]]


@dataclass(frozen=True)
class GammaCell:
    """A cell: 0/1 signature plus one bound (graph) or two (band) per coordinate."""

    signature: tuple[int, ...]
    bounds: tuple[CoordSpec, ...]

    @property
    def arity(self) -> int:
        return len(self.signature)

    def dimension(self) -> int:
        return sum(self.signature)

    def sample(self) -> tuple[Fraction, ...]:
        """A point of the cell, built coordinate by coordinate."""
        values: list[Fraction] = []
        for i, spec in zip(self.signature, self.bounds):
            if i == 0:
                values.append(spec.value(values))
            else:
                lo, hi = spec
                if isinstance(lo, _Inf) and isinstance(hi, _Inf):
                    values.append(Fraction(0))
                elif isinstance(lo, _Inf):
                    values.append(hi.value(values) - 1)
                elif isinstance(hi, _Inf):
                    values.append(lo.value(values) + 1)
                else:
                    values.append((lo.value(values) + hi.value(values)) / 2)
        return tuple(values)

    def contains(self, point: Sequence[Fraction]) -> bool:
        for k, (i, spec) in enumerate(zip(self.signature, self.bounds)):
            prefix = point[:k]
            x = point[k]
            if i == 0:
                if x != spec.value(prefix):
                    return False
            else:
                lo, hi = spec
                if not isinstance(lo, _Inf) and not (lo.value(prefix) < x):
                    return False
                if not isinstance(hi, _Inf) and not (x < hi.value(prefix)):
                    return False
        return True

    def to_basicset(self) -> BasicSet:
        """The cell as a conjunction of linear constraints."""
        n = self.arity
        atoms: list[LinearAtom] = []

        def row(b: AffineBound, k: int, rel: str, flip: bool):
            # b REL x_k  (flip False)  /  x_k REL b  (flip True)
            coeffs = [0] * n
            for idx, c in enumerate(b.coeffs):
                coeffs[idx] = c if not flip else -c
            coeffs[k] = -b.div if not flip else b.div
            rhs = -b.const if not flip else b.const
            a = atom(coeffs, rel, rhs)
            if isinstance(a, Atom):
                atoms.append(a.atom)

        for k, (i, spec) in enumerate(zip(self.signature, self.bounds)):
            if i == 0:
                row(spec, k, EQ, flip=True)
            else:
                lo, hi = spec
                if not isinstance(lo, _Inf):
                    row(lo, k, LT, flip=False)
                if not isinstance(hi, _Inf):
                    row(hi, k, LT, flip=True)
        return BasicSet(tuple(atoms), n)

    def is_consistent(self) -> bool:
        """Check the band invariant: lower strictly below upper on the base.

        Decided by emptiness of the violating system, coordinate by
        coordinate.
        """
        n = self.arity
        for k, (i, spec) in enumerate(zip(self.signature, self.bounds)):
            if i != 1:
                continue
            lo, hi = spec
            if isinstance(lo, _Inf) or isinstance(hi, _Inf):
                continue
            # lo >= hi anywhere on the base would break the cell.
            coeffs = [0] * n
            for idx, c in enumerate(lo.coeffs):
                coeffs[idx] += c * hi.div
            for idx, c in enumerate(hi.coeffs):
                coeffs[idx] -= c * lo.div
            rhs = hi.const * lo.div - lo.const * hi.div
            bad = atom(coeffs, ">=", rhs)
            if not isinstance(bad, Atom):
                if bad.holds(()):
                    return False
                continue
            base = GammaCell(self.signature[:k], self.bounds[:k]).to_basicset()
            padded = tuple(
                LinearAtom(_pad(a.coeffs, n), a.rel, a.rhs) for a in base.atoms
            )
            if not is_empty(BasicSet(padded + (bad.atom,), n)):
                return False
        return True


def bound_to_json(b: Bound):
    if isinstance(b, _Inf):
        return "inf" if b.sign > 0 else "-inf"
    return {"coeffs": list(b.coeffs), "const": str(b.const), "div": b.div}


def bound_from_json(obj) -> Bound:
    if obj == "inf":
        return PLUS_INF
    if obj == "-inf":
        return MINUS_INF
    return AffineBound(tuple(obj["coeffs"]), Fraction(obj["const"]), obj["div"])


def cell_to_json(c: GammaCell) -> dict:
    bounds = []
    for i, spec in zip(c.signature, c.bounds):
        if i == 0:
            bounds.append(bound_to_json(spec))
        else:
            bounds.append([bound_to_json(spec[0]), bound_to_json(spec[1])])
    return {"signature": list(c.signature), "bounds": bounds}


def cell_from_json(obj) -> GammaCell:
    signature = tuple(obj["signature"])
    bounds: list[CoordSpec] = []
    for i, spec in zip(signature, obj["bounds"]):
        if i == 0:
            bounds.append(bound_from_json(spec))
        else:
            bounds.append((bound_from_json(spec[0]), bound_from_json(spec[1])))
    return GammaCell(signature, tuple(bounds))


def _bound_from_atom(a: LinearAtom, j: int) -> AffineBound:
    """Solve atom ``a`` for variable ``j``: x_j REL (u.x + const)/div."""
    c = a.coeffs[j]
    rest = a.coeffs[:j]
    if c > 0:
        return AffineBound(tuple(-r for r in rest), a.rhs, c)
    return AffineBound(tuple(rest), -a.rhs, -c)


def _comparison_atoms(b1: AffineBound, b2: AffineBound) -> list[LinearAtom]:
    """Atoms whose truth pins the sign of b1 - b2 on a base cell."""
    coeffs = tuple(
        b2.div * c1 - b1.div * c2 for c1, c2 in zip(b1.coeffs, b2.coeffs)
    )
    rhs = b1.div * b2.const - b2.div * b1.const
    out = []
    for rel in (EQ, LT):
        f = atom(coeffs, rel, rhs)
        if isinstance(f, Atom):
            out.append(f.atom)
    return out


def _pad(coeffs: tuple[int, ...], n: int) -> tuple[int, ...]:
    return coeffs + (0,) * (n - len(coeffs))


def _arrangement_cells(atoms_: Sequence[LinearAtom], n: int) -> list[GammaCell]:
    """Partition Q^n into cells on which every atom has constant truth."""
    if n == 0:
        return [GammaCell((), ())]
    j = n - 1
    bounds: dict[tuple, AffineBound] = {}
    base_atoms: dict[tuple, LinearAtom] = {}
    for a in atoms_:
        if a.coeffs[j] != 0:
            b = _bound_from_atom(a, j)
            bounds[b.key()] = b
        else:
            trunc = LinearAtom(a.coeffs[:j], a.rel, a.rhs)
            base_atoms[trunc.key()] = trunc
    blist = sorted(bounds.values(), key=AffineBound.key)
    for b1, b2 in combinations(blist, 2):
        for c in _comparison_atoms(b1, b2):
            base_atoms[c.key()] = c
    base_cells = _arrangement_cells(
        sorted(base_atoms.values(), key=LinearAtom.key), j
    )
    out: list[GammaCell] = []
    for base in base_cells:
        s = base.sample()
        groups: dict[Fraction, AffineBound] = {}
        for b in blist:
            v = b.value(s)
            cur = groups.get(v)
            if cur is None or b.key() < cur.key():
                groups[v] = b
        ordered = [groups[v] for v in sorted(groups)]
        strata: list[tuple[int, CoordSpec]] = []
        if not ordered:
            strata.append((1, (MINUS_INF, PLUS_INF)))
        else:
            strata.append((1, (MINUS_INF, ordered[0])))
            for idx, b in enumerate(ordered):
                strata.append((0, b))
                upper = ordered[idx + 1] if idx + 1 < len(ordered) else PLUS_INF
                strata.append((1, (b, upper)))
        for i, spec in strata:
            out.append(
                GammaCell(base.signature + (i,), base.bounds + (spec,))
            )
    return out


def cell_decompose(f: Formula) -> list[GammaCell]:
    """Partition the set of ``f`` into pairwise disjoint cells.

    The returned cells cover exactly the set of ``f``; output order is
    deterministic (base cells in recursive order, strata bottom to top).
    """
    all_atoms = sorted(f.atoms(), key=LinearAtom.key)
    cells = _arrangement_cells(all_atoms, f.arity)
    return [c for c in cells if f.holds(c.sample())]


def has_interior(b: BasicSet) -> bool:
    """Full-dimensionality of one disjunct via its strict interior system."""
    strict = []
    for a in b.atoms:
        if a.rel == EQ:
            return False
        strict.append(LinearAtom(a.coeffs, LT, a.rhs))
    return not is_empty(BasicSet(tuple(strict), b.arity))


def dimension(f: Formula) -> int | float:
    """Dimension of a semilinear set: maximal signature sum over its cells.

    Returns ``NEG_INF`` for the empty set.
    """
    cells = cell_decompose(f)
    if not cells:
        return NEG_INF
    return max(c.dimension() for c in cells)


def dimension_via_projection(f: Formula) -> int | float:
    """Dimension as the largest d with an interior-carrying projection to Q^d.

    Independent route: project the DNF disjunct by disjunct onto every
    d-subset of coordinates and test full-dimensionality of the strict
    interior system.  Agrees with :func:`dimension` on every definable
    set.
    """
    disjuncts = normalize_dnf(f)
    if not disjuncts:
        return NEG_INF
    n = f.arity
    for d in range(n, 0, -1):
        for keep in combinations(range(n), d):
            for b in disjuncts:
                p = project_basic(b, keep)
                if p is not None and has_interior(p):
                    return d
    return 0
