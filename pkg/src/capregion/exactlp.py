"""Exact linear programming over arbitrary-precision rationals.

Two-phase primal simplex with Bland's anti-cycling rule, all arithmetic in
:class:`fractions.Fraction`.  Every optimal solve produces a dual vector
recovered from the final basis (solving B^T y = c_B exactly), and
:func:`verify_certificate` audits primal feasibility, dual feasibility and
strong duality with no tolerances.  A fractional covering program with box
constraints is provided on top as :func:`solve_covering_box`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_REL = ("<=", ">=", "=")


def fmt_rational(x: Fraction) -> str:
    """Serialize as ``p/q``, or ``p`` when integral."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


@dataclass(frozen=True)
class LPInstance:
    """maximize objective . x  subject to rows[i] . x  (rel_i)  rhs[i], x >= 0."""

    objective: tuple[Fraction, ...]
    rows: tuple[tuple[Fraction, ...], ...]
    relations: tuple[str, ...]
    rhs: tuple[Fraction, ...]

    def __post_init__(self):
        n = len(self.objective)
        if n == 0:
            raise ValueError("LP needs at least one variable")
        if not (len(self.rows) == len(self.relations) == len(self.rhs)):
            raise ValueError("inconsistent row dimensions")
        for r in self.rows:
            if len(r) != n:
                raise ValueError("row width does not match objective")
        for rel in self.relations:
            if rel not in _REL:
                raise ValueError(f"unknown relation {rel!r}")


@dataclass(frozen=True)
class LPSolution:
    status: str
    value: Fraction | None = None
    primal: tuple[Fraction, ...] | None = None
    dual: tuple[Fraction, ...] | None = None


def lp(objective, rows, relations, rhs) -> LPInstance:
    """Convenience constructor coercing all entries to Fraction."""
    return LPInstance(
        tuple(Fraction(c) for c in objective),
        tuple(tuple(Fraction(a) for a in row) for row in rows),
        tuple(relations),
        tuple(Fraction(b) for b in rhs),
    )


def _pivot(T: list[list[Fraction]], cost: list[Fraction], r: int, c: int,
           basis: list[int]):
    piv = T[r][c]
    T[r] = [a / piv for a in T[r]]
    for i, row in enumerate(T):
        if i != r and row[c] != 0:
            f = row[c]
            T[i] = [a - f * b for a, b in zip(row, T[r])]
    if cost[c] != 0:
        f = cost[c]
        for j, b in enumerate(T[r]):
            cost[j] -= f * b
    basis[r] = c


def _simplex(T: list[list[Fraction]], cost: list[Fraction], basis: list[int],
             ncols: int) -> str:
    """Maximize with Bland's rule; cost holds reduced costs, cost[-1] = -value."""
    while True:
        enter = -1
        for j in range(ncols):
            if cost[j] > 0:
                enter = j
                break
        if enter < 0:
            return OPTIMAL
        leave = -1
        best = None
        for i, row in enumerate(T):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return UNBOUNDED
        _pivot(T, cost, leave, enter, basis)


def _solve_gauss(M: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Exact Gaussian elimination; None when singular."""
    n = len(M)
    A = [row[:] + [b[i]] for i, row in enumerate(M)]
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


def solve_lp(instance: LPInstance) -> LPSolution:
    """Exact optimum of ``instance``; statuses are optimal / infeasible /
    unbounded.  Optimal solutions carry a dual certificate and are audited
    with :func:`verify_certificate` before being returned."""
    n = len(instance.objective)
    m = len(instance.rows)

    # Normalize to nonnegative rhs, remembering sign flips for the duals.
    rows: list[list[Fraction]] = []
    rels: list[str] = []
    rhs: list[Fraction] = []
    flip: list[bool] = []
    for i in range(m):
        a, rel, b = list(instance.rows[i]), instance.relations[i], instance.rhs[i]
        if b < 0:
            a = [-x for x in a]
            b = -b
            rel = {"<=": ">=", ">=": "<=", "=": "="}[rel]
            flip.append(True)
        else:
            flip.append(False)
        rows.append(a)
        rels.append(rel)
        rhs.append(b)

    # Standard form: append slack (+1) for <=, surplus (-1) for >=.
    std_cols = n + sum(1 for r in rels if r != "=")
    A: list[list[Fraction]] = []
    scol = n
    slack_of_row: list[int | None] = []
    for i in range(m):
        row = rows[i] + [Fraction(0)] * (std_cols - n)
        if rels[i] == "<=":
            row[scol] = Fraction(1)
            slack_of_row.append(scol)
            scol += 1
        elif rels[i] == ">=":
            row[scol] = Fraction(-1)
            slack_of_row.append(scol)
            scol += 1
        else:
            slack_of_row.append(None)
        A.append(row)

    # Initial basis: slack where it can serve (<= rows); artificials elsewhere.
    art_cols: list[int] = []
    basis: list[int] = []
    total = std_cols
    for i in range(m):
        if rels[i] == "<=":
            basis.append(slack_of_row[i])
        else:
            art_cols.append(total)
            basis.append(total)
            total += 1
    T = [A[i] + [Fraction(0)] * len(art_cols) + [rhs[i]] for i in range(m)]
    for i in range(m):
        if basis[i] >= std_cols:
            T[i][basis[i]] = Fraction(1)

    live_rows = list(range(m))  # original row index per tableau row

    if art_cols:
        # Phase 1: maximize -(sum of artificials).
        cost = [Fraction(0)] * (total + 1)
        for c in art_cols:
            cost[c] = Fraction(-1)
        for i in range(m):
            if basis[i] >= std_cols:
                f = cost[basis[i]]
                for j in range(total + 1):
                    cost[j] -= f * T[i][j]
        status = _simplex(T, cost, basis, total)
        assert status == OPTIMAL  # phase 1 is bounded above by 0
        if -cost[-1] != 0:
            return LPSolution(INFEASIBLE)
        # Drive leftover artificials out of the basis, dropping redundant rows.
        drop: list[int] = []
        for i in range(len(T)):
            if basis[i] >= std_cols:
                piv = next((j for j in range(std_cols) if T[i][j] != 0), None)
                if piv is None:
                    drop.append(i)
                else:
                    _pivot(T, cost, i, piv, basis)
        for i in reversed(drop):
            del T[i], basis[i], live_rows[i]

    # Phase 2 on structural + slack columns only.
    T = [row[:std_cols] + [row[-1]] for row in T]
    cost = [Fraction(0)] * (std_cols + 1)
    for j in range(n):
        cost[j] = instance.objective[j]
    for i, bi in enumerate(basis):
        if cost[bi] != 0:
            f = cost[bi]
            for j in range(std_cols + 1):
                cost[j] -= f * T[i][j]
    status = _simplex(T, cost, basis, std_cols)
    if status == UNBOUNDED:
        return LPSolution(UNBOUNDED)

    x = [Fraction(0)] * std_cols
    for i, bi in enumerate(basis):
        x[bi] = T[i][-1]
    primal = tuple(x[:n])
    value = sum(c * v for c, v in zip(instance.objective, primal))

    # Duals: solve B^T y = c_B over the surviving rows, zero elsewhere.
    k = len(basis)
    Bt = [[A[live_rows[i]][basis[j]] for i in range(k)] for j in range(k)]
    cb = [instance.objective[bj] if bj < n else Fraction(0) for bj in basis]
    y_live = _solve_gauss(Bt, cb)
    assert y_live is not None, "basis matrix must be nonsingular"
    dual = [Fraction(0)] * m
    for pos, ri in enumerate(live_rows):
        dual[ri] = -y_live[pos] if flip[ri] else y_live[pos]

    sol = LPSolution(OPTIMAL, value, primal, tuple(dual))
    assert verify_certificate(instance, sol), "exact solve must self-certify"
    return sol


def verify_certificate(instance: LPInstance, sol: LPSolution) -> bool:
    """Exact optimality audit: primal feasible, dual feasible (with the sign
    conditions induced by each row's relation), and zero duality gap."""
    if sol.status != OPTIMAL:
        raise ValueError("certificate check needs an optimal solution")
    n = len(instance.objective)
    if sol.primal is None or len(sol.primal) != n:
        raise ValueError("primal dimension mismatch")
    if sol.dual is None or len(sol.dual) != len(instance.rows):
        raise ValueError("dual dimension mismatch")
    x, y = sol.primal, sol.dual
    if any(v < 0 for v in x):
        return False
    for row, rel, b in zip(instance.rows, instance.relations, instance.rhs):
        lhs = sum(a * v for a, v in zip(row, x))
        if rel == "<=" and lhs > b:
            return False
        if rel == ">=" and lhs < b:
            return False
        if rel == "=" and lhs != b:
            return False
    for yi, rel in zip(y, instance.relations):
        if rel == "<=" and yi < 0:
            return False
        if rel == ">=" and yi > 0:
            return False
    for j in range(n):
        reduced = sum(y[i] * instance.rows[i][j] for i in range(len(y)))
        if reduced < instance.objective[j]:
            return False
    primal_value = sum(c * v for c, v in zip(instance.objective, x))
    dual_value = sum(yi * b for yi, b in zip(y, instance.rhs))
    return primal_value == sol.value == dual_value


@dataclass(frozen=True)
class CoveringInstance:
    """min cost . x  s.t.  matrix . x >= demand,  0 <= x <= box.

    ``matrix`` has nonnegative integer entries; costs are positive; the box
    is a vector of nonnegative integers.
    """

    matrix: tuple[tuple[int, ...], ...]
    demand: tuple[Fraction, ...]
    cost: tuple[Fraction, ...]
    box: tuple[int, ...]

    def __post_init__(self):
        ncols = len(self.cost)
        if len(self.box) != ncols:
            raise ValueError("box width mismatch")
        for row in self.matrix:
            if len(row) != ncols:
                raise ValueError("matrix width mismatch")
            if any(a < 0 for a in row):
                raise ValueError("matrix entries must be nonnegative")
        if any(c <= 0 for c in self.cost):
            raise ValueError("costs must be positive")
        if any(u < 0 for u in self.box):
            raise ValueError("box entries must be nonnegative")


def covering_to_lp(inst: CoveringInstance) -> LPInstance:
    """Equivalent maximization form (negated objective)."""
    ncols = len(inst.cost)
    rows = [tuple(Fraction(a) for a in row) for row in inst.matrix]
    rels = [">="] * len(inst.matrix)
    rhs = [Fraction(b) for b in inst.demand]
    for j in range(ncols):
        unit = [Fraction(0)] * ncols
        unit[j] = Fraction(1)
        rows.append(tuple(unit))
        rels.append("<=")
        rhs.append(Fraction(inst.box[j]))
    return LPInstance(tuple(-Fraction(c) for c in inst.cost),
                      tuple(rows), tuple(rels), tuple(rhs))


def solve_covering_box(inst: CoveringInstance) -> LPSolution:
    """Exact optimum of the covering program; ``value`` is the minimum cost.

    The duals reported are those of the maximization form produced by
    :func:`covering_to_lp` (certified there before the sign flip).
    """
    sol = solve_lp(covering_to_lp(inst))
    if sol.status != OPTIMAL:
        return sol
    return LPSolution(OPTIMAL, -sol.value, sol.primal, sol.dual)
