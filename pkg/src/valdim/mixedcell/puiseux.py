"""Finite Puiseux expressions: the desk-scale valued-coordinate domain.

An element is a finite sum of terms q * t^e with nonzero rational
coefficients q and strictly increasing rational exponents e.  The
valuation of an element is its least exponent; the valuation of zero is
the symbolic top element ``INFINITY``.  All root distances and polynomial
valuations computed from this data are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union


class _Infinity:
    """Top element adjoined to the rational value group (valuation of 0)."""

    __slots__ = ()

    def __repr__(self):
        return "INFINITY"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("valdim.INFINITY")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __neg__(self):
        raise ArithmeticError("the top element has no negative in the value group")


INFINITY = _Infinity()

Val = Union[Fraction, _Infinity]


@dataclass(frozen=True)
class PuiseuxElement:
    """Finite list of (exponent, coefficient) terms, exponents increasing."""

    terms: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        cleaned = []
        last = None
        for e, c in self.terms:
            e, c = Fraction(e), Fraction(c)
            if c == 0:
                continue
            if last is not None and e <= last:
                raise ValueError("exponents must be strictly increasing")
            last = e
            cleaned.append((e, c))
        object.__setattr__(self, "terms", tuple(cleaned))

    @staticmethod
    def of(*terms: tuple) -> "PuiseuxElement":
        """Build from (exponent, coefficient) pairs in any order."""
        acc: dict[Fraction, Fraction] = {}
        for e, c in terms:
            e = Fraction(e)
            acc[e] = acc.get(e, Fraction(0)) + Fraction(c)
        return PuiseuxElement(tuple(sorted((e, c) for e, c in acc.items() if c != 0)))

    @staticmethod
    def constant(q) -> "PuiseuxElement":
        return PuiseuxElement.of((Fraction(0), Fraction(q)))

    def is_zero(self) -> bool:
        return not self.terms

    def valuation(self) -> Val:
        return self.terms[0][0] if self.terms else INFINITY

    def __add__(self, other: "PuiseuxElement") -> "PuiseuxElement":
        return PuiseuxElement.of(*self.terms, *other.terms)

    def __neg__(self) -> "PuiseuxElement":
        return PuiseuxElement(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "PuiseuxElement") -> "PuiseuxElement":
        return self + (-other)

    def coefficient(self, e) -> Fraction:
        e = Fraction(e)
        for exp, c in self.terms:
            if exp == e:
                return c
        return Fraction(0)

    def key(self) -> tuple:
        """Term-lexicographic sort key; the canonical total order on elements."""
        return self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(str(c))
            elif e == 1:
                parts.append(f"{c}*t" if c != 1 else "t")
            else:
                parts.append(f"{c}*t^{e}" if c != 1 else f"t^{e}")
        return " + ".join(parts).replace("+ -", "- ")


def valuation(e: PuiseuxElement) -> Val:
    """Least exponent of a nonzero term; INFINITY for zero."""
    return e.valuation()


@dataclass(frozen=True)
class FactoredPoly:
    """lead * prod (x - root_i)^mult_i with pairwise distinct explicit roots.

    The zero polynomial is not representable (its valuation would be
    identically INFINITY), so ``lead`` must be a nonzero rational.
    """

    lead: Fraction
    roots: tuple[tuple[PuiseuxElement, int], ...] = ()

    def __post_init__(self):
        lead = Fraction(self.lead)
        if lead == 0:
            raise ValueError("zero polynomial rejected: valuation identically infinite")
        seen = set()
        fixed = []
        for r, m in self.roots:
            if not isinstance(r, PuiseuxElement):
                r = PuiseuxElement.constant(r)
            m = int(m)
            if m < 1:
                raise ValueError("root multiplicities must be positive")
            if r.key() in seen:
                raise ValueError(f"repeated root {r}")
            seen.add(r.key())
            fixed.append((r, m))
        fixed.sort(key=lambda rm: rm[0].key())
        object.__setattr__(self, "lead", lead)
        object.__setattr__(self, "roots", tuple(fixed))

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.roots)

    def multiplicity(self, r: PuiseuxElement) -> int:
        for root, m in self.roots:
            if root == r:
                return m
        return 0

    def valuation_at(self, x: PuiseuxElement) -> Val:
        """v(f(x)) computed term by term from the factored form."""
        total = Fraction(0)
        for r, m in self.roots:
            v = (x - r).valuation()
            if v is INFINITY:
                return INFINITY
            total += m * v
        return total

    def is_root(self, x: PuiseuxElement) -> bool:
        return any(x == r for r, _ in self.roots)

    def translate(self, a: PuiseuxElement) -> "FactoredPoly":
        """The polynomial x -> f(x + a); roots shift by -a."""
        return FactoredPoly(self.lead, tuple((r - a, m) for r, m in self.roots))

    def key(self) -> tuple:
        return (self.lead, tuple((r.key(), m) for r, m in self.roots))

    def __str__(self) -> str:
        parts = [] if self.lead == 1 and self.roots else [str(self.lead)]
        for r, m in self.roots:
            if r.is_zero():
                base = "(x)"
            else:
                s = str(r)
                base = f"(x - {s})" if not s.startswith("-") else f"(x + {s[1:]})"
            parts.append(base if m == 1 else f"{base}^{m}")
        return "*".join(parts) if parts else str(self.lead)
