"""Canonical shape of a one-variable definable set over (Q, +, <).

Every Boolean combination of one-variable linear constraints is a finite
union of maximal intervals and isolated points.  The pair (M, N) counting
them is the *type* of the set; the decomposition itself is unique once
adjacent pieces are merged, and the boundary is read off the endpoint and
point data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .atoms import Formula

#: (lo, lo_closed, hi, hi_closed); None stands for the missing endpoint of
#: a half-line or the full line.
Interval = tuple[Fraction | None, bool, Fraction | None, bool]


@dataclass(frozen=True)
class IntervalType:
    """Type (M, N): M maximal intervals, N isolated points, plus the data.

    Endpoints appear in increasing order and isolated points are distinct
    from interval endpoints (such coincidences merge during
    normalization).  ``boundary`` is the topological boundary: closure
    minus interior.
    """

    M: int
    N: int
    intervals: tuple[Interval, ...]
    points: tuple[Fraction, ...]
    boundary: tuple[Fraction, ...]

    def is_empty(self) -> bool:
        return self.M == 0 and self.N == 0

    def holds(self, x: Fraction) -> bool:
        for lo, lc, hi, hc in self.intervals:
            if (lo is None or x > lo or (lc and x == lo)) and (
                hi is None or x < hi or (hc and x == hi)
            ):
                return True
        return x in self.points


def _breakpoints(f: Formula) -> list[Fraction]:
    values = set()
    for a in f.atoms():
        c = a.coeffs[0]
        values.add(Fraction(a.rhs, c))
    return sorted(values)


def one_var_canonical(f: Formula) -> IntervalType:
    """Canonical decomposition of a one-variable formula.

    Samples the endpoint arrangement (each breakpoint, each gap between
    consecutive breakpoints, and one point beyond each end), then merges
    consecutive pieces into maximal intervals.
    """
    if f.arity > 1:
        raise ValueError(f"one_var_canonical needs 1 free variable, got {f.arity}")
    bps = _breakpoints(f)
    # Alternating arrangement pieces: gap, point, gap, ..., point, gap.
    # pieces[i] truth value, piece 2k is a gap, piece 2k+1 is bps[k].
    truths: list[bool] = []
    if not bps:
        return _assemble([f.holds((Fraction(0),))], [])
    for i, b in enumerate(bps):
        if i == 0:
            truths.append(f.holds((b - 1,)))
        else:
            truths.append(f.holds(((bps[i - 1] + b) / 2,)))
        truths.append(f.holds((b,)))
    truths.append(f.holds((bps[-1] + 1,)))
    return _assemble(truths, bps)


def _assemble(truths: list[bool], bps: list[Fraction]) -> IntervalType:
    intervals: list[Interval] = []
    points: list[Fraction] = []
    i = 0
    npieces = len(truths)

    def piece_bounds(k: int) -> Interval:
        if k % 2 == 1:
            b = bps[k // 2]
            return (b, True, b, True)
        lo = bps[k // 2 - 1] if k > 0 else None
        hi = bps[k // 2] if k // 2 < len(bps) else None
        return (lo, False, hi, False)

    while i < npieces:
        if not truths[i]:
            i += 1
            continue
        j = i
        while j + 1 < npieces and truths[j + 1]:
            j += 1
        lo, lc, _, _ = piece_bounds(i)
        _, _, hi, hc = piece_bounds(j)
        if i == j and i % 2 == 1:
            points.append(bps[i // 2])
        else:
            intervals.append((lo, lc, hi, hc))
        i = j + 1

    boundary = set()
    for lo, _, hi, _ in intervals:
        if lo is not None:
            boundary.add(lo)
        if hi is not None:
            boundary.add(hi)
    boundary.update(points)
    return IntervalType(
        M=len(intervals),
        N=len(points),
        intervals=tuple(intervals),
        points=tuple(sorted(points)),
        boundary=tuple(sorted(boundary)),
    )
