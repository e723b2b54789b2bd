"""Exact Fourier-Motzkin elimination with strict/weak bookkeeping.

Projection of a linear system over (Q, +, <) works one variable at a
time: equalities are eliminated first by substitution, then every lower
bound on the variable is combined with every upper bound.  A derived
constraint is strict exactly when one of its parents is strict.  Because
the group is dense, divisible and unbounded, the procedure is a complete
decision method for emptiness, and a satisfying point can be read back by
assigning variables in order against the per-stage bound lists.

Internally every row is scaled to integers (coefficients and right side),
so the elimination itself runs in machine integers; rational constants
reappear only at the boundary.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .atoms import EQ, LE, LT, BasicSet, Formula, LinearAtom, Or, atom

# Raw rows are (coeffs, rel, rhs) with integer coeffs and integer rhs.
Row = tuple[tuple[int, ...], str, int]


def _to_rows(atoms: Sequence[LinearAtom]) -> list[Row]:
    rows = []
    for a in atoms:
        d = a.rhs.denominator
        rows.append((tuple(c * d for c in a.coeffs), a.rel, a.rhs.numerator))
    return rows


def _reduce(coeffs: tuple[int, ...], rel: str, rhs: int) -> Row | bool:
    """Decide all-zero rows; rescale a row only when coefficients grow.

    Full gcd normalization on every combination costs more than it saves;
    rows are reduced once their magnitude passes a threshold, which keeps
    the integers machine-sized without a gcd per row.
    """
    big = False
    nonzero = False
    for c in coeffs:
        if c:
            nonzero = True
            if c > 256 or c < -256:
                big = True
    if not nonzero:
        if rel == LT:
            return 0 < rhs
        if rel == LE:
            return 0 <= rhs
        return rhs == 0
    if big:
        g = 0
        for c in coeffs:
            g = gcd(g, c)
        g = gcd(g, rhs)
        if g > 1:
            coeffs = tuple(c // g for c in coeffs)
            rhs //= g
    return (coeffs, rel, rhs)


def _substitute_eq(rows: list[Row], pivot: Row, j: int) -> list[Row] | None:
    """Eliminate variable ``j`` using the equality row ``pivot``.

    Returns None when a contradiction is exposed.
    """
    pc, _, pq = pivot
    a = pc[j]
    s = 1 if a > 0 else -1
    mag = abs(a)
    out: list[Row] = []
    for coeffs, rel, rhs in rows:
        d = coeffs[j]
        if d == 0:
            out.append((coeffs, rel, rhs))
            continue
        # row * |a|  -  pivot * sign(a) * d   kills the j column
        new_coeffs = tuple(mag * c - s * d * p for c, p in zip(coeffs, pc))
        r = _reduce(new_coeffs, rel, mag * rhs - s * d * pq)
        if r is False:
            return None
        if r is not True:
            out.append(r)
    return out


def _eliminate_var(rows: list[Row], j: int) -> list[Row] | None:
    """One FM step: remove every occurrence of variable ``j``.

    Returns the reduced system, or None when infeasibility is exposed.
    """
    for row in rows:
        if row[1] == EQ and row[0][j] != 0:
            rest = [r for r in rows if r is not row]
            return _substitute_eq(rest, row, j)
    lowers: list[Row] = []   # coeffs[j] < 0: bound from below
    uppers: list[Row] = []   # coeffs[j] > 0: bound from above
    keep: list[Row] = []
    for row in rows:
        c = row[0][j]
        if c == 0:
            keep.append(row)
        elif c > 0:
            uppers.append(row)
        else:
            lowers.append(row)
    seen = set(keep)
    out = list(keep)
    for lc, lrel, lq in lowers:
        for uc, urel, uq in uppers:
            m_low = uc[j]        # > 0, multiplier for the lower row
            m_up = -lc[j]        # > 0, multiplier for the upper row
            coeffs = tuple(m_low * cl + m_up * cu for cl, cu in zip(lc, uc))
            rel = LT if (lrel == LT or urel == LT) else LE
            r = _reduce(coeffs, rel, m_low * lq + m_up * uq)
            if r is False:
                return None
            if r is True or r in seen:
                continue
            seen.add(r)
            out.append(r)
    return out


def _single_functional_clash(rows: list[Row]) -> bool:
    """Detect contradictions among rows constraining one linear functional.

    Rows are primitive, so proportional left sides coincide up to sign;
    folding signs gives per-functional interval data whose emptiness is
    checked directly.  Sound but not complete: a False verdict means
    nothing.
    """
    recs: dict[tuple[int, ...], list] = {}
    for coeffs, rel, rhs in rows:
        neg = tuple(-c for c in coeffs)
        flip = coeffs < neg
        key, bound = (neg, -rhs) if flip else (coeffs, rhs)
        rec = recs.setdefault(key, [None, False, None, False, None])
        if rel == EQ:
            if rec[4] is not None and rec[4] != bound:
                return True
            rec[4] = bound
        elif flip:
            # s >(=) bound
            if rec[0] is None or bound > rec[0]:
                rec[0], rec[1] = bound, rel == LT
            elif bound == rec[0]:
                rec[1] = rec[1] or rel == LT
        else:
            if rec[2] is None or bound < rec[2]:
                rec[2], rec[3] = bound, rel == LT
            elif bound == rec[2]:
                rec[3] = rec[3] or rel == LT
    for lo, lo_strict, hi, hi_strict, eq in recs.values():
        if eq is not None:
            if lo is not None and (eq < lo or (eq == lo and lo_strict)):
                return True
            if hi is not None and (eq > hi or (eq == hi and hi_strict)):
                return True
        if lo is not None and hi is not None:
            if lo > hi or (lo == hi and (lo_strict or hi_strict)):
                return True
    return False


def rows_infeasible(rows: list[Row], arity: int) -> bool:
    """Full elimination on raw integer rows, after a cheap clash scan."""
    if _single_functional_clash(rows):
        return True
    for j in range(arity):
        result = _eliminate_var(rows, j)
        if result is None:
            return True
        rows = result
    return False


def atoms_empty(atoms: Sequence[LinearAtom], arity: int) -> bool:
    """Emptiness of a bare conjunction, without building a BasicSet."""
    return rows_infeasible(_to_rows(set(atoms)), arity)


def atom_rows(atoms: Sequence[LinearAtom]) -> list[Row]:
    """Integer-scaled rows of a conjunction, for callers staying in row space."""
    return _to_rows(atoms)


def negate_row(row: Row) -> list[Row]:
    """Rows covering the complement of one row (two pieces for equality)."""
    coeffs, rel, rhs = row
    neg = tuple(-c for c in coeffs)
    if rel == LT:
        return [(neg, LE, -rhs)]
    if rel == LE:
        return [(neg, LT, -rhs)]
    return [(coeffs, LT, rhs), (neg, LT, -rhs)]


def is_empty(b: BasicSet) -> bool:
    """Decide whether no rational point satisfies the conjunction ``b``.

    Runs full elimination down to a variable-free system; the lazy flag on
    the basic set caches the verdict.
    """
    if b._empty is not None:
        return b._empty
    verdict = rows_infeasible(_to_rows(b.atoms), b.arity)
    object.__setattr__(b, "_empty", verdict)
    return verdict


def project_basic(b: BasicSet, keep: Sequence[int]) -> BasicSet | None:
    """Project a basic set onto the coordinates in ``keep`` (sorted).

    Returns a basic set over ``len(keep)`` variables, or None when ``b``
    is empty.
    """
    keep = sorted(keep)
    if is_empty(b):
        # contradictions purely among kept coordinates would otherwise
        # survive the elimination untouched
        return None
    rows = _to_rows(b.atoms)
    for j in range(b.arity):
        if j in keep:
            continue
        result = _eliminate_var(rows, j)
        if result is None:
            return None
        rows = result
    atoms_ = []
    for coeffs, rel, rhs in rows:
        atoms_.append(
            LinearAtom(tuple(coeffs[j] for j in keep), rel, Fraction(rhs))
        )
    return BasicSet(tuple(atoms_), len(keep))


def project(f: Formula, keep: Sequence[int]) -> Formula:
    """Coordinate projection of the set of ``f`` onto the ``keep`` variables.

    Variable indices are 0-based positions in the ambient space; the
    result is a formula over ``len(keep)`` variables in the same relative
    order.  Works disjunct by disjunct on the DNF.
    """
    from .atoms import Bool, normalize_dnf

    keep = sorted(keep)
    if any(j < 0 or j >= f.arity for j in keep):
        raise ValueError(f"projection indices {keep} out of range for arity {f.arity}")
    parts = []
    for b in normalize_dnf(f):
        p = project_basic(b, keep)
        if p is None:
            continue
        parts.append(p.to_formula() if p.atoms else Bool(True, len(keep)))
    if not parts:
        return Bool(False, len(keep))
    return Or.of(*parts)


def exists(f: Formula, var: int) -> Formula:
    """Existential quantification of one variable, keeping the ambient arity.

    The result is a cylinder: variable ``var`` is eliminated and then
    reintroduced unconstrained, so the formula composes with the rest of
    an enclosing Boolean tree.
    """
    from .atoms import And, Bool, normalize_dnf

    n = f.arity
    if not (0 <= var < n):
        raise ValueError(f"variable {var} out of range for arity {n}")
    keep = [j for j in range(n) if j != var]
    parts = []
    for b in normalize_dnf(f):
        p = project_basic(b, keep)
        if p is None:
            continue
        lifted = []
        for a in p.atoms:
            coeffs = list(a.coeffs)
            coeffs.insert(var, 0)
            lifted.append(atom(coeffs, a.rel, a.rhs))
        parts.append(And.of(*lifted) if lifted else Bool(True, n))
    if not parts:
        return Bool(False, n)
    return Or.of(*parts)


def sample_point(b: BasicSet) -> tuple[Fraction, ...] | None:
    """A rational point satisfying ``b``, by back-substitution, or None.

    Variables are eliminated from the last index down, recording the
    system at each stage; values are then assigned from the first index
    up, picking midpoints of the remaining feasible interval.
    """
    stages: list[list[Row]] = [None] * (b.arity + 1)  # type: ignore[list-item]
    stages[b.arity] = _to_rows(b.atoms)
    rows = stages[b.arity]
    for j in range(b.arity - 1, -1, -1):
        result = _eliminate_var(rows, j)
        if result is None:
            return None
        stages[j] = result
        rows = result
    values: list[Fraction] = []
    for j in range(b.arity):
        lo: Fraction | None = None
        hi: Fraction | None = None
        pin: Fraction | None = None
        for coeffs, rel, rhs in stages[j + 1]:
            c = coeffs[j]
            if c == 0:
                continue
            rest = rhs - sum(coeffs[i] * values[i] for i in range(j))
            bound = Fraction(rest, c)
            if rel == EQ:
                pin = bound
            elif c > 0:
                if hi is None or bound < hi:
                    hi = bound
            else:
                if lo is None or bound > lo:
                    lo = bound
        if pin is not None:
            values.append(pin)
        elif lo is None and hi is None:
            values.append(Fraction(0))
        elif lo is None:
            values.append(hi - 1)
        elif hi is None:
            values.append(lo + 1)
        elif lo == hi:
            values.append(lo)
        else:
            values.append((lo + hi) / 2)
    point = tuple(values)
    if not b.holds(point):
        # FM guarantees feasibility of the greedy assignment; reaching here
        # means an internal invariant broke.
        raise AssertionError(f"back-substitution produced a non-member {point}")
    return point
