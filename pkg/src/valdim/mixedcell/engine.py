"""Relative cell decomposition over one valued coordinate and its dimensions.

The engine reduces every mixed formula to group-sort reasoning: the
valued line is partitioned by :func:`monomial_decompose` so each
valuation term becomes affine in the radius coordinate rho = v(x - c);
on each piece the formula turns into a linear formula over
(rho, gamma_1, ..., gamma_n) which is decomposed fiberwise, rho acting
as the base-linked coordinate.  Zero loci of the tracked polynomials are
resolved into explicit point pieces first, so the infinite valuation
never reaches the group-sort engine.

A mixed cell is a piece of the line together with a group-sort cell over
(rho, gamma); its dimension is the pair (piece dimension, sum of the
gamma signature), and the mixed dimension of a set is the lower set
generated by its cells' dimension pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .. import semilinear as sl
from ..errors import SemanticError
from ..lowerset import LowerSet2, lower_closure
from .formula import MAnd, MAtom, MBool, MNot, MOr, MixedAtom, MixedFormula
from .pieces import MonomialValuation, SwissPiece, monomial_decompose, piece_k_dimension
from .puiseux import INFINITY, FactoredPoly, PuiseuxElement


@dataclass(frozen=True)
class MixedCell:
    """A swiss piece with a group-sort cell over (rho, gamma) above it.

    For a non-point piece the fiber cell's first coordinate is the
    base-linked radius rho; its remaining coordinates are the gamma
    variables.  For a point piece the fiber is a plain gamma cell.
    """

    piece: SwissPiece
    fiber: sl.GammaCell
    n_gamma: int

    @property
    def kdim(self) -> int:
        return piece_k_dimension(self.piece)

    @property
    def gamma_signature(self) -> tuple[int, ...]:
        if self.piece.kind == "points":
            return self.fiber.signature
        return self.fiber.signature[1:]

    def dim_pair(self) -> tuple[int, int]:
        return (self.kdim, sum(self.gamma_signature))

    def contains(self, x: PuiseuxElement, gamma: Sequence[Fraction]) -> bool:
        if not self.piece.contains(x):
            return False
        if self.piece.kind == "points":
            return self.fiber.contains(tuple(gamma))
        rho = self.piece.rho_of(x)
        return self.fiber.contains((rho, *gamma))

    def sample(self) -> tuple[PuiseuxElement, tuple[Fraction, ...]]:
        """A member (x, gamma) of the cell."""
        point = self.fiber.sample()
        if self.piece.kind == "points":
            return self.piece.sample(), point
        rho = point[0]
        if self.piece.kind == "sphere":
            return self.piece.sample(), point[1:]
        return self.piece.sample(rho=rho), point[1:]

    def gamma_projection(self) -> sl.Formula:
        """Exact projection of the cell to the gamma coordinates."""
        if self.piece.kind == "points":
            return self.fiber.to_basicset().to_formula()
        b = self.fiber.to_basicset()
        p = sl.project_basic(b, list(range(1, self.n_gamma + 1)))
        if p is None:
            return sl.Bool(False, self.n_gamma)
        return p.to_formula() if p.atoms else sl.Bool(True, self.n_gamma)


def _tracked_polys(f: MixedFormula) -> list[FactoredPoly]:
    return f.polys()


def _atom_on_piece(
    a: MixedAtom,
    vals: dict[tuple, MonomialValuation],
    n: int,
    at_point: bool,
) -> sl.Formula:
    """Translate one mixed atom into a linear formula on one piece.

    Non-point pieces get arity n+1 with rho first; point pieces get
    arity n (and resolve infinite valuations to constants).
    """
    arity = n if at_point else n + 1
    if a.weight == 0:
        coeffs = a.gcoeffs if at_point else (0, *a.gcoeffs)
        if a.rhs is INFINITY:
            return sl.Bool(a.rel != "=", arity)
        return sl.atom(coeffs, a.rel, a.rhs)
    mv = vals[a.poly.key()]
    if at_point:
        v = mv.value(INFINITY)
        if v is INFINITY:
            # lhs is +inf for positive weight, -inf for negative weight
            if a.rhs is INFINITY:
                value = a.weight > 0 if a.rel == "=" else (
                    a.weight < 0 if a.rel == "<" else True
                )
            else:
                value = a.weight < 0 and a.rel in ("<", "<=")
            return sl.Bool(value, arity)
        if a.rhs is INFINITY:
            return sl.Bool(a.rel != "=", arity)
        return sl.atom(a.gcoeffs, a.rel, a.rhs - a.weight * v)
    # off the point pieces every tracked valuation is finite
    if a.rhs is INFINITY:
        return sl.Bool(a.rel != "=", arity)
    coeffs = (a.weight * mv.slope, *a.gcoeffs)
    return sl.atom(coeffs, a.rel, a.rhs - a.weight * mv.const)


def _formula_on_piece(
    f: MixedFormula,
    vals: dict[tuple, MonomialValuation],
    n: int,
    at_point: bool,
) -> sl.Formula:
    if isinstance(f, MBool):
        return sl.Bool(f.value, n if at_point else n + 1)
    if isinstance(f, MAtom):
        return _atom_on_piece(f.data, vals, n, at_point)
    if isinstance(f, MNot):
        return sl.Not.of(_formula_on_piece(f.part, vals, n, at_point))
    if isinstance(f, MAnd):
        return sl.And.of(*[_formula_on_piece(p, vals, n, at_point) for p in f.parts])
    if isinstance(f, MOr):
        return sl.Or.of(*[_formula_on_piece(p, vals, n, at_point) for p in f.parts])
    raise TypeError(f"not a mixed formula: {f!r}")


def _rho_constraints(piece: SwissPiece, n: int) -> list[sl.Formula]:
    rho = (1,) + (0,) * n
    out = []
    if piece.kind == "sphere":
        out.append(sl.atom(rho, "=", piece.radius))
    else:
        if piece.lo is not None:
            out.append(sl.atom(rho, ">", piece.lo))
        if piece.hi is not None:
            out.append(sl.atom(rho, "<", piece.hi))
    return out


def piece_formulas(
    f: MixedFormula,
) -> list[tuple[SwissPiece, sl.Formula]]:
    """Per-piece linear formulas over (rho, gamma) or gamma (point pieces).

    The conjunction of the translated formula with the piece's radius
    window; together the pairs describe the set of ``f`` exactly.
    """
    n = f.n_gamma
    polys = _tracked_polys(f)
    out = []
    for piece, vals in monomial_decompose(polys):
        vmap = {p.key(): v for p, v in zip(polys, vals)}
        at_point = piece.kind == "points"
        g = _formula_on_piece(f, vmap, n, at_point)
        if not at_point:
            g = sl.And.of(g, *_rho_constraints(piece, n))
        out.append((piece, g))
    return out


def mixed_cell_decompose(f: MixedFormula) -> list[MixedCell]:
    """Partition the set of ``f`` into mixed cells."""
    return [
        MixedCell(piece, cell, f.n_gamma)
        for piece, g in piece_formulas(f)
        for cell in sl.cell_decompose(g)
    ]


def mixed_dimension(f: MixedFormula) -> LowerSet2:
    """The lower set generated by the dimension pairs of the cells."""
    pairs = {cell.dim_pair() for cell in mixed_cell_decompose(f)}
    return lower_closure(pairs)


def mixed_dimension_via_fibers(f: MixedFormula) -> LowerSet2:
    """Independent route: dimensions of the fiber-dimension loci.

    For each i, the locus of valued-line points whose gamma-fiber has
    dimension i contributes (its own dimension, i); the mixed dimension
    is the lower set generated by these pairs.  The loci are computed by
    slicing each piece's radius line at the endpoints of its cells'
    rho-windows.
    """
    contributions: set[tuple[int, int]] = set()
    for piece, g in piece_formulas(f):
        cells = sl.cell_decompose(g)
        if not cells:
            continue
        if piece.kind == "points":
            fib = max(sum(c.signature) for c in cells)
            contributions.add((0, fib))
            continue
        windows: list[tuple[Fraction | None, Fraction | None, bool, int]] = []
        cuts: set[Fraction] = set()
        for c in cells:
            spec = c.bounds[0]
            gsig = sum(c.signature[1:])
            if c.signature[0] == 0:
                at = spec.value(())
                windows.append((at, at, True, gsig))
                cuts.add(at)
            else:
                lo, hi = spec
                lo_v = lo.value(()) if isinstance(lo, sl.AffineBound) else None
                hi_v = hi.value(()) if isinstance(hi, sl.AffineBound) else None
                windows.append((lo_v, hi_v, False, gsig))
                cuts.update(v for v in (lo_v, hi_v) if v is not None)
        ordered = sorted(cuts)
        samples = list(ordered)
        samples.extend(
            (a + b) / 2 for a, b in zip(ordered, ordered[1:])
        )
        if ordered:
            samples.extend((ordered[0] - 1, ordered[-1] + 1))
        else:
            samples.append(Fraction(0))
        for s in samples:
            fib = -1
            for lo_v, hi_v, is_point, gsig in windows:
                if is_point:
                    inside = s == lo_v
                else:
                    inside = (lo_v is None or lo_v < s) and (hi_v is None or s < hi_v)
                if inside:
                    fib = max(fib, gsig)
            if fib >= 0:
                contributions.add((1, fib))
    return lower_closure(contributions)


def project_to_gamma(f: MixedFormula) -> sl.Formula:
    """Formula for { gamma : some x makes (x, gamma) satisfy f }."""
    n = f.n_gamma
    parts = []
    for piece, g in piece_formulas(f):
        if piece.kind == "points":
            parts.append(g)
        else:
            parts.append(sl.project(g, list(range(1, n + 1))))
    if not parts:
        return sl.Bool(False, n)
    return sl.Or.of(*parts)


def _puiseux_to_json(e: PuiseuxElement) -> list[list[str]]:
    return [[str(exp), str(c)] for exp, c in e.terms]


def piece_to_json(p: SwissPiece) -> dict:
    out: dict = {"kind": p.kind}
    if p.kind == "points":
        out["elements"] = [_puiseux_to_json(e) for e in p.elements]
        return out
    out["center"] = _puiseux_to_json(p.center)
    if p.kind == "sphere":
        out["radius"] = str(p.radius)
        out["avoid"] = [_puiseux_to_json(a) for a in p.avoid]
    else:
        out["lo"] = None if p.lo is None else str(p.lo)
        out["hi"] = None if p.hi is None else str(p.hi)
    return out


def mixed_cell_to_json(c: MixedCell) -> dict:
    out = sl.cell_to_json(c.fiber)
    out["base"] = piece_to_json(c.piece)
    out["kdim"] = c.kdim
    return out


# --- definable bijections -------------------------------------------------


@dataclass(frozen=True)
class GammaPermutation:
    """gamma_i moves to position perm[i]."""

    perm: tuple[int, ...]


@dataclass(frozen=True)
class GammaTranslation:
    offsets: tuple[Fraction, ...]


@dataclass(frozen=True)
class GammaUnimodular:
    """gamma -> U gamma for an integer matrix with determinant +-1."""

    matrix: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class KTranslation:
    """x -> x - shift on the valued coordinate."""

    shift: PuiseuxElement


BijectionSpec = Union[GammaPermutation, GammaTranslation, GammaUnimodular, KTranslation]


def _det(m: list[list[int]]) -> int:
    if len(m) == 1:
        return m[0][0]
    total = 0
    for j in range(len(m)):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        total += (-1) ** j * m[0][j] * _det(minor)
    return total


def _unimodular_inverse(u: tuple[tuple[int, ...], ...]) -> list[list[int]]:
    n = len(u)
    m = [list(row) for row in u]
    d = _det(m)
    if d not in (1, -1):
        raise SemanticError(f"matrix with determinant {d} is not unimodular")
    inv = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [m[r][c] for c in range(n) if c != i]
                for r in range(n)
                if r != j
            ]
            cof = (-1) ** (i + j) * (_det(minor) if minor else 1)
            inv[i][j] = cof * d  # divide by det = multiply, since det is +-1
    return inv


def _map_atoms(f: MixedFormula, fn) -> MixedFormula:
    if isinstance(f, MBool):
        return f
    if isinstance(f, MAtom):
        return fn(f.data)
    if isinstance(f, MNot):
        return MNot.of(_map_atoms(f.part, fn))
    if isinstance(f, MAnd):
        return MAnd.of(*[_map_atoms(p, fn) for p in f.parts])
    if isinstance(f, MOr):
        return MOr.of(*[_map_atoms(p, fn) for p in f.parts])
    raise TypeError(f"not a mixed formula: {f!r}")


def apply_bijection(f: MixedFormula, b: BijectionSpec) -> MixedFormula:
    """Formula for the image of the set of ``f`` under the bijection ``b``."""
    n = f.n_gamma

    if isinstance(b, GammaPermutation):
        if sorted(b.perm) != list(range(n)):
            raise SemanticError(f"{b.perm} is not a permutation of 0..{n - 1}")

        def permute(a: MixedAtom) -> MixedFormula:
            coeffs = [0] * n
            for i, c in enumerate(a.gcoeffs):
                coeffs[b.perm[i]] = c
            return MAtom(MixedAtom(a.weight, a.poly, tuple(coeffs), a.rel, a.rhs))

        return _map_atoms(f, permute)

    if isinstance(b, GammaTranslation):
        if len(b.offsets) != n:
            raise SemanticError("translation arity mismatch")
        offs = tuple(Fraction(d) for d in b.offsets)

        def translate(a: MixedAtom) -> MixedFormula:
            if a.rhs is INFINITY:
                return MAtom(a)
            shift = sum(c * d for c, d in zip(a.gcoeffs, offs))
            return MAtom(MixedAtom(a.weight, a.poly, a.gcoeffs, a.rel, a.rhs + shift))

        return _map_atoms(f, translate)

    if isinstance(b, GammaUnimodular):
        if len(b.matrix) != n or any(len(r) != n for r in b.matrix):
            raise SemanticError("matrix arity mismatch")
        inv = _unimodular_inverse(b.matrix)

        def substitute(a: MixedAtom) -> MixedFormula:
            coeffs = tuple(
                sum(a.gcoeffs[i] * inv[i][j] for i in range(n)) for j in range(n)
            )
            return MAtom(MixedAtom(a.weight, a.poly, coeffs, a.rel, a.rhs))

        return _map_atoms(f, substitute)

    if isinstance(b, KTranslation):

        def shift_poly(a: MixedAtom) -> MixedFormula:
            if a.poly is None:
                return MAtom(a)
            return MAtom(
                MixedAtom(a.weight, a.poly.translate(b.shift), a.gcoeffs, a.rel, a.rhs)
            )

        return _map_atoms(f, shift_poly)

    raise SemanticError(f"unknown bijection spec {b!r}")
