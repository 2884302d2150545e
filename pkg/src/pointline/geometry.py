"""Exact arrangement statistics for finite planar point sets.

Everything here runs on exact rational arithmetic (fractions.Fraction and
arbitrary-precision int). Collinearity is a discrete property: a single
rounded bit would move lines between histogram buckets, so no floating
point is allowed anywhere in this module.

All functions are pure; callers may fan work out over configurations
freely.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Iterator

from .errors import CollinearInput, DuplicatePoints, IdenticalPoints


@dataclass(frozen=True)
class Point:
    """A planar point with exact rational coordinates."""

    x: Fraction
    y: Fraction

    def __post_init__(self) -> None:
        # Accept int / str / Fraction inputs; normalise to Fraction.
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))


@dataclass(frozen=True)
class PointSet:
    """An ordered tuple of pairwise distinct points.

    Order is preserved exactly as given; point indices used in reports and
    witnesses refer to this order. Distinctness is enforced at construction
    so downstream statistics never see a degenerate multiset.
    """

    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        seen: dict[Point, int] = {}
        clashes = []
        for idx, p in enumerate(pts):
            if p in seen:
                clashes.append((seen[p], idx))
            else:
                seen[p] = idx
        if clashes:
            raise DuplicatePoints(clashes)

    @classmethod
    def from_coords(cls, coords) -> "PointSet":
        return cls(tuple(Point(x, y) for x, y in coords))

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __getitem__(self, idx: int) -> Point:
        return self.points[idx]


@dataclass(frozen=True)
class Line:
    """A line a*x + b*y + c = 0 in canonical integer form.

    Canonical means: a, b, c are integers with gcd 1, (a, b) != (0, 0), and
    the sign is fixed by a > 0, or a == 0 and b > 0. Two point pairs span
    the same line exactly when their canonical triples are equal, which is
    what makes hash-grouping by Line correct.
    """

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        a, b, c = self.a, self.b, self.c
        if (a, b) == (0, 0):
            raise ValueError("degenerate line: a = b = 0")
        if gcd(a, b, c) != 1:
            raise ValueError(f"non-reduced line triple ({a}, {b}, {c})")
        if a < 0 or (a == 0 and b < 0):
            raise ValueError(f"sign rule violated for ({a}, {b}, {c})")


def collinear(p: Point, q: Point, r: Point) -> bool:
    """Exact orientation test: True iff the three points lie on one line."""
    return (q.x - p.x) * (r.y - p.y) == (q.y - p.y) * (r.x - p.x)


def canonical_line(p: Point, q: Point) -> Line:
    """The unique canonical Line through two distinct points."""
    if p == q:
        raise IdenticalPoints(f"cannot span a line from coincident points {p}")
    a = q.y - p.y
    b = p.x - q.x
    c = q.x * p.y - p.x * q.y
    d = lcm(a.denominator, b.denominator, c.denominator)
    ai = a.numerator * (d // a.denominator)
    bi = b.numerator * (d // b.denominator)
    ci = c.numerator * (d // c.denominator)
    g = gcd(ai, bi, ci)
    ai, bi, ci = ai // g, bi // g, ci // g
    if ai < 0 or (ai == 0 and bi < 0):
        ai, bi, ci = -ai, -bi, -ci
    return Line(ai, bi, ci)


@dataclass(frozen=True)
class ArrangementStats:
    """Line histogram of a point set.

    s maps i to the number of lines containing exactly i of the points
    (only nonzero entries, ascending keys). lines, incidences and edges are
    sum(s_i), sum(i * s_i) and sum((i-1) * s_i). l_max is the largest line
    size (0 when no line is determined). dirac_degree is the maximum number
    of determined lines through any single point, attained at index
    dirac_witness (lowest such index; None only for the empty set).
    """

    n: int
    s: dict[int, int]
    lines: int
    incidences: int
    edges: int
    l_max: int
    dirac_degree: int
    dirac_witness: int | None


def compute_arrangement(ps: PointSet) -> ArrangementStats:
    """Group all point pairs by their canonical line and histogram the sizes.

    O(n^2) pairs with hash-map grouping. Point sets with n < 2 determine no
    lines and yield all-zero statistics.
    """
    n = ps.n
    if n < 2:
        return ArrangementStats(
            n=n, s={}, lines=0, incidences=0, edges=0, l_max=0,
            dirac_degree=0, dirac_witness=0 if n == 1 else None,
        )
    members: dict[Line, set[int]] = {}
    pts = ps.points
    for i in range(n):
        for j in range(i + 1, n):
            members.setdefault(canonical_line(pts[i], pts[j]), set()).update((i, j))
    tally = Counter(len(m) for m in members.values())
    s = {i: tally[i] for i in sorted(tally)}
    per_point = [0] * n
    for group in members.values():
        for idx in group:
            per_point[idx] += 1
    degree = max(per_point)
    witness = per_point.index(degree)
    return ArrangementStats(
        n=n,
        s=s,
        lines=sum(s.values()),
        incidences=sum(i * si for i, si in s.items()),
        edges=sum((i - 1) * si for i, si in s.items()),
        l_max=max(s),
        dirac_degree=degree,
        dirac_witness=witness,
    )


def dirac_degree(ps: PointSet) -> tuple[int, int]:
    """(witness index, degree): the point lying on the most determined lines.

    Ties go to the lowest index. Refuses sets with fewer than 3 points and
    fully collinear sets, where the maximum is degenerate.
    """
    stats = compute_arrangement(ps)
    if ps.n < 3:
        raise CollinearInput(f"need at least 3 points, got {ps.n}")
    if stats.l_max == ps.n:
        raise CollinearInput("all points lie on a single line")
    assert stats.dirac_witness is not None
    return stats.dirac_witness, stats.dirac_degree


def subgraph_edge_count(stats: ArrangementStats, i: int) -> int:
    """sum_{j >= i} (j - 1) * s_j: edges of the visibility subgraph at level i."""
    if i < 2:
        raise ValueError(f"level must be >= 2, got {i}")
    return sum((j - 1) * sj for j, sj in stats.s.items() if j >= i)


def pair_tally(stats: ArrangementStats, lo: int, hi: int) -> int:
    """sum_{lo <= i <= hi} C(i, 2) * s_i: point pairs on lines of size lo..hi."""
    if not 2 <= lo <= hi:
        raise ValueError(f"need 2 <= lo <= hi, got lo={lo} hi={hi}")
    return sum(comb(i, 2) * si for i, si in stats.s.items() if lo <= i <= hi)
