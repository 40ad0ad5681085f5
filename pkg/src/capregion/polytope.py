"""Exact rational polytope geometry in rate space (dimensions 1 and 2).

Regions are stored with both a vertex list and a facet list; all numbers are
``Fraction`` end to end.  Facet normals are primitive integer vectors with
the halfspace written as  normal . x <= offset.  Full vertex/facet duality
is implemented for dimensions 1 and 2; higher dimensions carry vertex lists
only (facet enumeration in general dimension is out of scope).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class Halfspace:
    """normal . x <= offset, with primitive integer normal."""

    normal: tuple[int, ...]
    offset: Fraction

    def satisfies(self, point: Point) -> bool:
        return sum(n * x for n, x in zip(self.normal, point)) <= self.offset


def halfspace(normal, offset) -> Halfspace:
    """Normalize to a primitive integer normal (orientation preserved)."""
    normal = [Fraction(a) for a in normal]
    offset = Fraction(offset)
    if all(a == 0 for a in normal):
        raise ValueError("zero normal")
    denom = 1
    for a in normal:
        denom = denom * a.denominator // gcd(denom, a.denominator)
    ints = [int(a * denom) for a in normal]
    g = 0
    for a in ints:
        g = gcd(g, abs(a))
    return Halfspace(tuple(a // g for a in ints), offset * denom / g)


@dataclass(frozen=True)
class RegionDescription:
    vertices: tuple[Point, ...]
    facets: tuple[Halfspace, ...]
    dimension: int


def _pt(coords) -> Point:
    return tuple(Fraction(c) for c in coords)


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points) -> RegionDescription:
    """Exact 2D hull: CCW vertex order from the lexicographic minimum,
    collinear interior points dropped, facets derived from hull edges.
    Degenerate inputs (a point or a segment) produce box-style facet pairs so
    membership stays exact."""
    pts = sorted(set(_pt(p) for p in points))
    if not pts:
        raise ValueError("empty point set")
    if any(len(p) != 2 for p in pts):
        raise ValueError("convex_hull_2d needs 2D points")
    if len(pts) == 1:
        return _degenerate_region(pts)

    def half(seq):
        chain: list[Point] = []
        for p in seq:
            while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:  # all points collinear
        return _degenerate_region(pts)
    facets = []
    for i, p in enumerate(hull):
        q = hull[(i + 1) % len(hull)]
        d = (q[0] - p[0], q[1] - p[1])
        normal = (d[1], -d[0])  # outward for CCW order
        facets.append(halfspace(normal, normal[0] * p[0] + normal[1] * p[1]))
    return RegionDescription(tuple(hull), tuple(facets), 2)


def _degenerate_region(pts: list[Point]) -> RegionDescription:
    """H-description of a single point or segment via opposing halfspaces."""
    lo, hi = pts[0], pts[-1]
    facets: list[Halfspace] = []
    if lo == hi:
        vertices = (lo,)
    else:
        vertices = (lo, hi)
        d = (hi[0] - lo[0], hi[1] - lo[1])
        n = (d[1], -d[0])
        for sign in (1, -1):
            facets.append(halfspace((sign * n[0], sign * n[1]),
                                    sign * (n[0] * lo[0] + n[1] * lo[1])))
        # caps perpendicular to the segment
        facets.append(halfspace(d, d[0] * hi[0] + d[1] * hi[1]))
        facets.append(halfspace((-d[0], -d[1]), -(d[0] * lo[0] + d[1] * lo[1])))
        return RegionDescription(vertices, tuple(facets), 2)
    for i, sign in ((0, 1), (0, -1), (1, 1), (1, -1)):
        n = [0, 0]
        n[i] = sign
        facets.append(halfspace(n, sign * lo[i]))
    return RegionDescription(vertices, tuple(facets), 2)


def hull_1d(points) -> RegionDescription:
    pts = sorted(set(_pt(p) for p in points))
    if not pts:
        raise ValueError("empty point set")
    if any(len(p) != 1 for p in pts):
        raise ValueError("hull_1d needs 1D points")
    lo, hi = pts[0], pts[-1]
    facets = (halfspace((-1,), -lo[0]), halfspace((1,), hi[0]))
    vertices = (lo,) if lo == hi else (lo, hi)
    return RegionDescription(vertices, facets, 1)


def membership(region: RegionDescription, point) -> bool:
    """Closed-region membership via the facet list (boundary included)."""
    point = _pt(point)
    if len(point) != region.dimension:
        raise ValueError("dimension mismatch")
    if not region.facets:
        raise ValueError("region has no facet description")
    return all(f.satisfies(point) for f in region.facets)


def vertices_from_facets_2d(facets) -> tuple[Point, ...]:
    """Invert an H-description: intersect facet pairs, keep feasible points,
    return them in hull order."""
    pts = []
    for i in range(len(facets)):
        for j in range(i + 1, len(facets)):
            a, b = facets[i], facets[j]
            det = Fraction(a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0])
            if det == 0:
                continue
            x = (a.offset * b.normal[1] - b.offset * a.normal[1]) / det
            y = (a.normal[0] * b.offset - b.normal[0] * a.offset) / det
            p = (x, y)
            if all(f.satisfies(p) for f in facets):
                pts.append(p)
    return convex_hull_2d(pts).vertices


def down_closure(points, dimension: int | None = None) -> RegionDescription:
    """Hull of nonnegative points together with all axis-aligned projections
    and the origin (dimension <= 3; facet lists only for dimensions 1 and 2)."""
    pts = [_pt(p) for p in points]
    if dimension is None:
        if not pts:
            raise ValueError("dimension needed for an empty point set")
        dimension = len(pts[0])
    if dimension > 3:
        raise ValueError("down_closure supports dimension <= 3")
    for p in pts:
        if any(c < 0 for c in p):
            raise ValueError("negative coordinate")
    closed: set[Point] = {tuple(Fraction(0) for _ in range(dimension))}
    for p in pts:
        for mask in range(1 << dimension):
            closed.add(tuple(c if not (mask >> i) & 1 else Fraction(0)
                             for i, c in enumerate(p)))
    if dimension == 1:
        return hull_1d(closed)
    if dimension == 2:
        return convex_hull_2d(closed)
    return RegionDescription(tuple(extreme_points(sorted(closed))), (), 3)


def extreme_points(pts: list[Point]) -> list[Point]:
    """Points not expressible as convex combinations of the others (exact LP)."""
    from capregion.exactlp import OPTIMAL, lp, solve_lp

    extreme = []
    for i, p in enumerate(pts):
        others = [q for j, q in enumerate(pts) if j != i]
        if not others:
            extreme.append(p)
            continue
        rows = [tuple(q[d] for q in others) for d in range(len(p))]
        rows.append(tuple(Fraction(1) for _ in others))
        rels = ["="] * (len(p) + 1)
        rhs = list(p) + [Fraction(1)]
        sol = solve_lp(lp([0] * len(others), rows, rels, rhs))
        if sol.status != OPTIMAL:
            extreme.append(p)
    return extreme


def reflect_symmetrize(oracle):
    """Wrap a nonnegative-orthant ray oracle so it answers arbitrary rays on
    the region reflected through all coordinate sign patterns.

    Returns a callable mapping a nonzero direction to (lambda, boundary
    point); the query is folded into the nonnegative orthant and the answer
    mirrored back.
    """

    def symmetric(direction):
        direction = _pt(direction)
        if all(d == 0 for d in direction):
            raise ValueError("zero direction")
        folded = tuple(abs(d) for d in direction)
        lam = oracle(folded)
        return lam, tuple(lam * d for d in direction)

    return symmetric


def serialize_region(region: RegionDescription) -> str:
    """Text block: ``vertex`` lines then ``facet`` lines, rationals in lowest
    terms."""
    from capregion.exactlp import fmt_rational

    out = []
    for v in region.vertices:
        out.append("vertex " + " ".join(fmt_rational(c) for c in v))
    for f in region.facets:
        out.append("facet " + " ".join(str(a) for a in f.normal)
                   + " <= " + fmt_rational(f.offset))
    return "\n".join(out) + "\n"


def parse_region(text: str) -> RegionDescription:
    vertices = []
    facets = []
    dim = None
    for line in text.splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "vertex":
            vertices.append(tuple(Fraction(t) for t in parts[1:]))
            dim = len(parts) - 1
        elif parts[0] == "facet":
            k = parts.index("<=")
            facets.append(Halfspace(tuple(int(t) for t in parts[1:k]),
                                    Fraction(parts[k + 1])))
        else:
            raise ValueError(f"unknown region line {line!r}")
    if dim is None:
        raise ValueError("no vertices")
    return RegionDescription(tuple(vertices), tuple(facets), dim)
