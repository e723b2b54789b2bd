"""Linear atoms and Boolean formulas over the ordered divisible group (Q, +, <).

An atom is an integer-coefficient linear constraint ``c . x REL q`` with
``REL`` one of ``<``, ``<=``, ``=`` and ``q`` an exact rational.  The
relations ``>``, ``>=``, ``!=`` are normalized away at construction time
(sign flip, or a disjunction for ``!=``), and an atom whose coefficients
are all zero collapses to a Boolean constant.  Formulas are Boolean trees
over atoms with a fixed variable arity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

LT = "<"
LE = "<="
EQ = "="
RELS = (LT, LE, EQ)

Point = tuple[Fraction, ...]


def _gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, abs(v))
    return g


@dataclass(frozen=True, eq=False)
class LinearAtom:
    """``coeffs . x REL rhs`` with integer coefficients, in reduced form.

    Invariant: at least one coefficient is nonzero (all-zero constraints
    are Boolean constants, handled by :func:`atom`), the coefficient gcd
    is 1, and equalities have positive leading coefficient.
    """

    coeffs: tuple[int, ...]
    rel: str
    rhs: Fraction

    def __post_init__(self):
        if self.rel not in RELS:
            raise ValueError(f"bad relation {self.rel!r}")
        coeffs = tuple(int(c) for c in self.coeffs)
        rhs = Fraction(self.rhs)
        g = _gcd_all(coeffs)
        if g == 0:
            raise ValueError("all-zero atom; use atom() which folds constants")
        if g > 1:
            coeffs = tuple(c // g for c in coeffs)
            rhs = rhs / g
        if self.rel == EQ:
            lead = next(c for c in coeffs if c != 0)
            if lead < 0:
                coeffs = tuple(-c for c in coeffs)
                rhs = -rhs
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "rhs", rhs)
        key = (coeffs, self.rel, rhs.numerator, rhs.denominator)
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "_hash", hash(key))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, LinearAtom) and self._key == other._key

    @property
    def arity(self) -> int:
        return len(self.coeffs)

    def holds(self, point: Sequence[Fraction]) -> bool:
        lhs = sum(c * v for c, v in zip(self.coeffs, point))
        if self.rel == LT:
            return lhs < self.rhs
        if self.rel == LE:
            return lhs <= self.rhs
        return lhs == self.rhs

    def is_strict(self) -> bool:
        return self.rel == LT

    def key(self) -> tuple:
        return self._key

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            term = f"x{i + 1}" if mag == 1 else f"{mag}*x{i + 1}"
            parts.append(f"{sign} {term}" if parts else f"{sign}{term}")
        return f"{' '.join(parts)} {self.rel} {self.rhs}"


class Formula:
    """Base class for Boolean formula nodes; all nodes carry an arity."""

    arity: int

    def holds(self, point: Sequence[Fraction]) -> bool:
        raise NotImplementedError

    def atoms(self) -> set[LinearAtom]:
        raise NotImplementedError

    def __and__(self, other: "Formula") -> "Formula":
        return And.of(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or.of(self, other)

    def __invert__(self) -> "Formula":
        return Not.of(self)


@dataclass(frozen=True)
class Bool(Formula):
    value: bool
    arity: int = 0

    def holds(self, point):
        return self.value

    def atoms(self):
        return set()


@dataclass(frozen=True)
class Atom(Formula):
    atom: LinearAtom

    @property
    def arity(self) -> int:
        return self.atom.arity

    def holds(self, point):
        return self.atom.holds(point)

    def atoms(self):
        return {self.atom}


def _common_arity(parts: Sequence[Formula]) -> int:
    arities = {p.arity for p in parts if not isinstance(p, Bool)}
    if len(arities) > 1:
        raise ValueError(f"mixed formula arities {sorted(arities)}")
    if arities:
        return arities.pop()
    return max((p.arity for p in parts), default=0)


@dataclass(frozen=True)
class And(Formula):
    parts: tuple[Formula, ...]
    arity: int = field(compare=False, default=0)

    @staticmethod
    def of(*parts: Formula) -> Formula:
        n = _common_arity(parts)
        flat: list[Formula] = []
        for p in parts:
            if isinstance(p, Bool):
                if not p.value:
                    return Bool(False, n)
                continue
            if isinstance(p, And):
                flat.extend(p.parts)
            else:
                flat.append(p)
        if not flat:
            return Bool(True, n)
        if len(flat) == 1:
            return flat[0]
        return And(tuple(flat), n)

    def holds(self, point):
        return all(p.holds(point) for p in self.parts)

    def atoms(self):
        out: set[LinearAtom] = set()
        for p in self.parts:
            out |= p.atoms()
        return out


@dataclass(frozen=True)
class Or(Formula):
    parts: tuple[Formula, ...]
    arity: int = field(compare=False, default=0)

    @staticmethod
    def of(*parts: Formula) -> Formula:
        n = _common_arity(parts)
        flat: list[Formula] = []
        for p in parts:
            if isinstance(p, Bool):
                if p.value:
                    return Bool(True, n)
                continue
            if isinstance(p, Or):
                flat.extend(p.parts)
            else:
                flat.append(p)
        if not flat:
            return Bool(False, n)
        if len(flat) == 1:
            return flat[0]
        return Or(tuple(flat), n)

    def holds(self, point):
        return any(p.holds(point) for p in self.parts)

    def atoms(self):
        out: set[LinearAtom] = set()
        for p in self.parts:
            out |= p.atoms()
        return out


@dataclass(frozen=True)
class Not(Formula):
    part: Formula

    @staticmethod
    def of(part: Formula) -> Formula:
        if isinstance(part, Bool):
            return Bool(not part.value)
        if isinstance(part, Not):
            return part.part
        return Not(part)

    @property
    def arity(self) -> int:
        return self.part.arity

    def holds(self, point):
        return not self.part.holds(point)

    def atoms(self):
        return self.part.atoms()


TRUE = Bool(True)
FALSE = Bool(False)

GammaFormula = Formula

RatLike = Union[Fraction, int, str]


def atom(coeffs: Sequence[int], rel: str, rhs: RatLike) -> Formula:
    """Build an atomic formula, normalizing the relation into {<, <=, =}.

    ``>``/``>=`` negate both sides, ``!=`` expands to a disjunction, and a
    constraint with no variable left becomes a Boolean constant.
    """
    cs = tuple(int(c) for c in coeffs)
    q = Fraction(rhs)
    if rel in (">", ">="):
        cs = tuple(-c for c in cs)
        q = -q
        rel = LT if rel == ">" else LE
    if rel == "!=":
        return Or.of(atom(cs, LT, q), atom(tuple(-c for c in cs), LT, -q))
    if rel == "==":
        rel = EQ
    if rel not in RELS:
        raise ValueError(f"bad relation {rel!r}")
    if all(c == 0 for c in cs):
        zero = Fraction(0)
        value = zero < q if rel == LT else (zero <= q if rel == LE else zero == q)
        return Bool(value, len(cs))
    return Atom(LinearAtom(cs, rel, q))


def negate_atom(a: LinearAtom) -> Formula:
    """Formula for the complement of a single atom."""
    if a.rel == LT:
        return atom(tuple(-c for c in a.coeffs), LE, -a.rhs)
    if a.rel == LE:
        return atom(tuple(-c for c in a.coeffs), LT, -a.rhs)
    return Or.of(
        atom(a.coeffs, LT, a.rhs), atom(tuple(-c for c in a.coeffs), LT, -a.rhs)
    )


@dataclass(frozen=True)
class BasicSet:
    """Conjunction of atoms: one polyhedron with per-face strict/weak flags.

    Atoms are stored sorted and deduplicated; the emptiness flag is filled
    lazily by the elimination module.
    """

    atoms: tuple[LinearAtom, ...]
    arity: int
    _empty: bool | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(
            self, "atoms", tuple(sorted(set(self.atoms), key=LinearAtom.key))
        )
        for a in self.atoms:
            if a.arity != self.arity:
                raise ValueError("atom arity does not match BasicSet arity")

    def holds(self, point: Sequence[Fraction]) -> bool:
        return all(a.holds(point) for a in self.atoms)

    def to_formula(self) -> Formula:
        if not self.atoms:
            return Bool(True, self.arity)
        return And.of(*[Atom(a) for a in self.atoms])

    def relaxed(self) -> "BasicSet":
        """The same system with every strict face made weak."""
        return BasicSet(
            tuple(
                LinearAtom(a.coeffs, LE if a.rel == LT else a.rel, a.rhs)
                for a in self.atoms
            ),
            self.arity,
        )

    def is_weak(self) -> bool:
        return all(a.rel != LT for a in self.atoms)


def formula_to_dsl(f: Formula) -> str:
    """Render a formula back into DSL text, in disjunctive normal form."""
    disjuncts = normalize_dnf(f)
    if not disjuncts:
        return "false"
    parts = []
    for b in disjuncts:
        if not b.atoms:
            return "true"
        joined = " & ".join(str(a) for a in b.atoms)
        parts.append(f"({joined})" if len(disjuncts) > 1 and len(b.atoms) > 1 else joined)
    return " | ".join(parts)


def nnf(f: Formula, positive: bool = True) -> Formula:
    """Negation normal form: negations pushed onto atoms and resolved."""
    if isinstance(f, Bool):
        return Bool(f.value if positive else not f.value, f.arity)
    if isinstance(f, Atom):
        return f if positive else negate_atom(f.atom)
    if isinstance(f, Not):
        return nnf(f.part, not positive)
    if isinstance(f, And):
        parts = [nnf(p, positive) for p in f.parts]
        return And.of(*parts) if positive else Or.of(*parts)
    if isinstance(f, Or):
        parts = [nnf(p, positive) for p in f.parts]
        return Or.of(*parts) if positive else And.of(*parts)
    raise TypeError(f"not a formula: {f!r}")


def _dnf_lists(f: Formula) -> list[tuple[LinearAtom, ...]]:
    if isinstance(f, Bool):
        return [()] if f.value else []
    if isinstance(f, Atom):
        return [(f.atom,)]
    if isinstance(f, Or):
        out = []
        for p in f.parts:
            out.extend(_dnf_lists(p))
        return out
    if isinstance(f, And):
        disjuncts: list[tuple[LinearAtom, ...]] = [()]
        for p in f.parts:
            branch = _dnf_lists(p)
            disjuncts = [d + b for d in disjuncts for b in branch]
        return disjuncts
    raise TypeError(f"unexpected node in NNF: {f!r}")


def normalize_dnf(f: Formula, arity: int | None = None) -> list[BasicSet]:
    """Disjunctive normal form of ``f`` as a list of basic sets.

    The union of the returned sets equals the set defined by ``f``.
    Empty disjuncts are pruned (emptiness decided by full elimination) and
    the output order is lexicographic on atom encodings, for determinism.
    """
    from .elimination import is_empty

    n = f.arity if arity is None else arity
    seen = set()
    out: list[BasicSet] = []
    for atoms_ in _dnf_lists(nnf(f)):
        b = BasicSet(atoms_, n)
        if b.atoms in seen:
            continue
        seen.add(b.atoms)
        if not is_empty(b):
            out.append(b)
    out.sort(key=lambda b: tuple(a.key() for a in b.atoms))
    return out
