"""Column-packing engine shared by the routing and semi-linear regions.

A column is a unit bundle: packing one unit of it occupies one capacity unit
on each of its edges and delivers one rate unit of every message it covers
(a Steiner tree covers a single message; a partial scalar-linear code covers
the support of its weight vector).  The capacity-constrained polytope over
column multiplicities projects linearly to rate space; ray queries and
support queries against that projection are answered by the exact rational
LP solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from capregion.exactlp import OPTIMAL, LPInstance, solve_lp
from capregion.polytope import RegionDescription, convex_hull_2d, hull_1d

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class PackingColumn:
    coverage: tuple[int, ...]  # message indices served at unit rate
    edges: tuple[int, ...]     # edge indices occupied at unit capacity


@dataclass(frozen=True)
class ColumnSystem:
    n_messages: int
    capacities: tuple[int, ...]
    columns: tuple[PackingColumn, ...]
    rate_bounds: tuple[Fraction, ...]

    def __post_init__(self):
        for col in self.columns:
            if not col.edges:
                raise ValueError("columns must occupy at least one edge")


@dataclass(frozen=True)
class RayQuery:
    direction: tuple[Fraction, ...]


@dataclass(frozen=True)
class RayAnswer:
    """Boundary scale along a ray with a packing witness.

    Exact answers carry ``bracket=None``; approximate answers carry a
    bracket (lower, upper) certified to contain the true boundary scale.
    The packing lists (column index, amount) pairs and is always feasible.
    """

    lam: Fraction
    packing: tuple[tuple[int, Fraction], ...]
    bracket: tuple[Fraction, Fraction] | None = None


def direction_vector(q, n_messages: int, allow_negative: bool = False) -> Point:
    if isinstance(q, RayQuery):
        q = q.direction
    d = tuple(Fraction(v) for v in q)
    if len(d) != n_messages:
        raise ValueError("direction dimension mismatch")
    if not allow_negative and any(v < 0 for v in d):
        raise ValueError("ray direction must be nonnegative")
    if all(v == 0 for v in d):
        raise ValueError("zero ray direction")
    return d


def packing_rates(system: ColumnSystem, packing) -> Point:
    rates = [Fraction(0)] * system.n_messages
    for j, amount in packing:
        for i in system.columns[j].coverage:
            rates[i] += amount
    return tuple(rates)


def packing_feasible(system: ColumnSystem, packing) -> bool:
    load = [Fraction(0)] * len(system.capacities)
    for j, amount in packing:
        if amount < 0:
            return False
        for e in system.columns[j].edges:
            load[e] += amount
    return all(load[e] <= c for e, c in zip(range(len(load)), system.capacities))


def _capacity_rows(system: ColumnSystem, extra_vars: int):
    rows = []
    for e, cap in enumerate(system.capacities):
        row = [Fraction(1) if e in system.columns[j].edges else Fraction(0)
               for j in range(len(system.columns))]
        rows.append(tuple(row + [Fraction(0)] * extra_vars))
    return rows, [Fraction(cap) for cap in system.capacities]


def ray_lp(system: ColumnSystem, q) -> LPInstance:
    """max lam  s.t. column packing respects capacities and delivers at least
    lam * q_i of every message with q_i > 0."""
    d = direction_vector(q, system.n_messages)
    ncols = len(system.columns)
    rows, rhs = _capacity_rows(system, extra_vars=1)
    rels = ["<="] * len(rows)
    for i, qi in enumerate(d):
        if qi == 0:
            continue
        row = [Fraction(1) if i in system.columns[j].coverage else Fraction(0)
               for j in range(ncols)]
        rows.append(tuple(row + [-qi]))
        rels.append(">=")
        rhs.append(Fraction(0))
    objective = tuple([Fraction(0)] * ncols + [Fraction(1)])
    return LPInstance(objective, tuple(rows), tuple(rels), tuple(rhs))


def ray_oracle_exact(system: ColumnSystem, q) -> RayAnswer:
    """Exact boundary scale along ``q`` (self-certified LP solve)."""
    sol = solve_lp(ray_lp(system, q))
    assert sol.status == OPTIMAL, "ray LP is feasible (zero) and bounded"
    packing = tuple((j, v) for j, v in enumerate(sol.primal[:-1]) if v > 0)
    return RayAnswer(sol.value, packing)


def support_lp(system: ColumnSystem, direction) -> LPInstance:
    d = tuple(Fraction(v) for v in direction)  # any sign, zero allowed
    if len(d) != system.n_messages:
        raise ValueError("direction dimension mismatch")
    ncols = len(system.columns)
    rows, rhs = _capacity_rows(system, extra_vars=0)
    objective = tuple(sum((d[i] for i in system.columns[j].coverage), Fraction(0))
                      for j in range(ncols))
    return LPInstance(objective, tuple(rows), tuple(["<="] * len(rows)), tuple(rhs))


def support_query(system: ColumnSystem, direction) -> tuple[Fraction, Point]:
    """Exact support value of the region in ``direction`` plus an attaining
    rate vector."""
    sol = solve_lp(support_lp(system, direction))
    assert sol.status == OPTIMAL, "support LP is bounded by capacities"
    packing = tuple((j, v) for j, v in enumerate(sol.primal) if v > 0)
    return sol.value, packing_rates(system, packing)


def support_vertex(system: ColumnSystem, direction) -> Point:
    """The vertex attaining the support maximum, lexicographic tie-breaking
    (direction, then each message rate in turn): chained equality stages pin
    a unique extreme point."""
    ncols = len(system.columns)
    base_rows, base_rhs = _capacity_rows(system, extra_vars=0)
    rows = list(base_rows)
    rels = ["<="] * len(rows)
    rhs = list(base_rhs)

    def coeffs(d):
        return tuple(sum((Fraction(d[i]) for i in system.columns[j].coverage),
                         Fraction(0)) for j in range(ncols))

    stages = [tuple(Fraction(v) for v in direction)]
    for i in range(system.n_messages):
        unit = [Fraction(0)] * system.n_messages
        unit[i] = Fraction(1)
        stages.append(tuple(unit))
    primal = None
    for d in stages:
        objective = coeffs(d)
        sol = solve_lp(LPInstance(objective, tuple(rows), tuple(rels), tuple(rhs)))
        assert sol.status == OPTIMAL
        primal = sol.primal
        rows.append(objective)
        rels.append("=")
        rhs.append(sol.value)
    packing = tuple((j, v) for j, v in enumerate(primal) if v > 0)
    return packing_rates(system, packing)


def region_from_support(system: ColumnSystem) -> RegionDescription:
    """Exact region description from support-vertex queries (dimensions 1, 2).

    The chain of extreme points between the two axis-extreme vertices is
    refined recursively: a candidate edge is kept when the support value in
    its outward normal direction certifies it, otherwise the attaining
    vertex splits the gap.
    """
    if system.n_messages == 1:
        value, _ = support_query(system, (Fraction(1),))
        return hull_1d([(Fraction(0),), (value,)])
    if system.n_messages != 2:
        raise ValueError("support-driven descriptions cover dimensions 1 and 2")

    a = support_vertex(system, (Fraction(1), Fraction(0)))
    b = support_vertex(system, (Fraction(0), Fraction(1)))
    chain = [a]

    def refine(p: Point, q: Point):
        if p == q:
            return
        normal = (q[1] - p[1], p[0] - q[0])
        mid = support_vertex(system, normal)
        reach = normal[0] * mid[0] + normal[1] * mid[1]
        if reach == normal[0] * p[0] + normal[1] * p[1]:
            chain.append(q)
            return
        refine(p, mid)
        refine(mid, q)

    refine(a, b)
    zero = Fraction(0)
    points = set(chain) | {(a[0], zero), (zero, b[1]), (zero, zero)}
    return convex_hull_2d(points)


class RegionTooLargeError(ValueError):
    """Brute-force vertex enumeration exceeds the configured basis cap."""


def enumerate_polytope_vertices(system: ColumnSystem,
                                basis_cap: int = 2_000_000):
    """All vertices of the column-packing polytope by brute force over tight
    constraint subsets (float prescreen, exact confirmation).

    Constraint matrices are 0/1, so nonsingular tight systems have integer
    determinant of magnitude >= 1 and the float screen cannot discard a true
    vertex.  Raises :class:`RegionTooLargeError` above ``basis_cap`` bases.
    """
    n = len(system.columns)
    m = len(system.capacities)
    if comb(n + m, n) > basis_cap:
        raise RegionTooLargeError(
            f"{comb(n + m, n)} candidate bases exceed the cap {basis_cap}")
    rows_f = np.zeros((m + n, n))
    rhs_f = np.zeros(m + n)
    rows_q: list[tuple[Fraction, ...]] = []
    rhs_q: list[Fraction] = []
    for e in range(m):
        row = [Fraction(1) if e in system.columns[j].edges else Fraction(0)
               for j in range(n)]
        rows_q.append(tuple(row))
        rhs_q.append(Fraction(system.capacities[e]))
        rows_f[e] = [float(v) for v in row]
        rhs_f[e] = float(system.capacities[e])
    for j in range(n):
        row = [Fraction(0)] * n
        row[j] = Fraction(-1)
        rows_q.append(tuple(row))
        rhs_q.append(Fraction(0))
        rows_f[m + j] = [float(v) for v in row]

    vertices: set[tuple[Fraction, ...]] = set()
    for subset in combinations(range(m + n), n):
        sub = rows_f[list(subset)]
        det = np.linalg.det(sub)
        if abs(det) < 0.5:  # integer determinant: zero means singular
            continue
        xf = np.linalg.solve(sub, rhs_f[list(subset)])
        if (rows_f @ xf - rhs_f).max() > 1e-6:
            continue
        x = _exact_solve([rows_q[i] for i in subset], [rhs_q[i] for i in subset])
        if x is None:
            continue
        if all(sum(a * v for a, v in zip(row, x)) <= b
               for row, b in zip(rows_q, rhs_q)):
            vertices.add(tuple(x))
    return sorted(vertices)


def _exact_solve(rows, rhs):
    n = len(rhs)
    A = [list(rows[i]) + [rhs[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        inv = A[col][col]
        A[col] = [a / inv for a in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * c for a, c in zip(A[r], A[col])]
    return [A[i][n] for i in range(n)]


def region_via_vertices(system: ColumnSystem,
                        basis_cap: int = 2_000_000) -> RegionDescription:
    """Region as the hull of the rate images of the packing polytope's
    vertices (each vertex maps to its per-message delivered rates)."""
    points = set()
    for x in enumerate_polytope_vertices(system, basis_cap):
        packing = tuple((j, v) for j, v in enumerate(x) if v > 0)
        points.add(packing_rates(system, packing))
    if system.n_messages == 1:
        return hull_1d(points)
    if system.n_messages == 2:
        return convex_hull_2d(points)
    raise ValueError("facet descriptions cover dimensions 1 and 2 only")
