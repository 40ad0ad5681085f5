"""Exact-LP engine tests, cross-checked against brute-force basis enumeration."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from capregion.exactlp import (
    CoveringInstance,
    INFEASIBLE,
    LPSolution,
    OPTIMAL,
    UNBOUNDED,
    covering_to_lp,
    fmt_rational,
    lp,
    parse_rational,
    solve_covering_box,
    solve_lp,
    verify_certificate,
)

F = Fraction


def brute_force_max(objective, rows, rhs):
    """Independent oracle: maximum of the objective over all basic feasible
    solutions of  rows.x <= rhs, x >= 0  (standard form with slacks).

    Enumerates every basis of [A | I]; assumes the polytope is bounded so the
    optimum is attained at a vertex.
    """
    n, m = len(objective), len(rows)
    cols = []
    for j in range(n):
        cols.append([F(rows[i][j]) for i in range(m)])
    for i in range(m):
        cols.append([F(1) if k == i else F(0) for k in range(m)])
    best = None
    for basis in combinations(range(n + m), m):
        M = [[cols[j][i] for j in basis] for i in range(m)]
        sol = _gauss(M, [F(b) for b in rhs])
        if sol is None or any(v < 0 for v in sol):
            continue
        x = [F(0)] * (n + m)
        for j, v in zip(basis, sol):
            x[j] = v
        val = sum(F(c) * x[j] for j, c in enumerate(objective))
        if best is None or val > best:
            best = val
    return best


def _gauss(M, b):
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


def test_single_bound():
    sol = solve_lp(lp([1], [[1]], ["<="], [2]))
    assert sol.status == OPTIMAL
    assert sol.value == 2


def test_butterfly_pattern():
    # Shared bottleneck: max x1+x2 with x1<=1, x2<=1, x1+x2<=1.
    sol = solve_lp(lp([1, 1], [[1, 0], [0, 1], [1, 1]], ["<="] * 3, [1, 1, 1]))
    assert sol.status == OPTIMAL
    assert sol.value == 1
    assert verify_certificate(lp([1, 1], [[1, 0], [0, 1], [1, 1]],
                                 ["<="] * 3, [1, 1, 1]), sol)


def test_infeasible():
    sol = solve_lp(lp([1], [[-1], [1]], ["<=", "<="], [-1, 0]))
    assert sol.status == INFEASIBLE


def test_unbounded():
    sol = solve_lp(lp([1], [[-1]], ["<="], [0]))
    assert sol.status == UNBOUNDED


def test_equality_rows():
    sol = solve_lp(lp([1, 0], [[1, 1], [0, 1]], ["=", "<="], [3, 1]))
    assert sol.status == OPTIMAL
    assert sol.value == 3  # y forced >= 0, x = 3 - y maximized at y = 0


def test_degenerate_lp_terminates():
    # Heavily degenerate at the origin; Bland's rule must still terminate.
    sol = solve_lp(lp([1, 1, 1],
                      [[1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1]],
                      ["<="] * 4, [0, 0, 0, 1]))
    assert sol.status == OPTIMAL
    assert sol.value == 0


def test_certificate_rejects_corruption():
    instance = lp([1, 1], [[1, 0], [0, 1], [1, 1]], ["<="] * 3, [1, 1, 1])
    sol = solve_lp(instance)
    bad_primal = LPSolution(OPTIMAL, sol.value,
                            (sol.primal[0] + 1, sol.primal[1]), sol.dual)
    assert not verify_certificate(instance, bad_primal)
    bad_dual = LPSolution(OPTIMAL, sol.value, sol.primal,
                          (sol.dual[0] - 1, sol.dual[1], sol.dual[2]))
    assert not verify_certificate(instance, bad_dual)


def test_random_instances_match_brute_force():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 4)
        m = rng.randint(1, 4)
        rows = [[rng.randint(0, 3) for _ in range(n)] for _ in range(m)]
        for j in range(n):  # every variable capped somewhere: bounded LP
            if all(rows[i][j] == 0 for i in range(m)):
                rows[rng.randrange(m)][j] = rng.randint(1, 3)
        rhs = [rng.randint(1, 6) for _ in range(m)]
        objective = [rng.randint(0, 5) for _ in range(n)]
        sol = solve_lp(lp(objective, rows, ["<="] * m, rhs))
        assert sol.status == OPTIMAL
        assert sol.value == brute_force_max(objective, rows, rhs)


def test_ray_shape_scaling():
    # Scaling the rhs of a packing-shaped LP scales the optimum exactly.
    base_rows = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, 0, -1], [0, 1, -2]]
    rels = ["<=", "<=", "<=", ">=", ">="]
    obj = [0, 0, 1]
    lo = solve_lp(lp(obj, base_rows, rels, [1, 1, 1, 0, 0]))
    hi = solve_lp(lp(obj, base_rows, rels, [3, 3, 3, 0, 0]))
    assert lo.status == hi.status == OPTIMAL
    assert hi.value == 3 * lo.value


def test_covering_identity():
    sol = solve_covering_box(CoveringInstance(((1,),), (F(1),), (F(1),), (1,)))
    assert sol.status == OPTIMAL
    assert sol.value == 1
    assert sol.primal[0] == 1


def test_covering_separable():
    inst = CoveringInstance(((1, 0), (0, 1)), (F(1), F(1)), (F(1), F(2)), (1, 1))
    sol = solve_covering_box(inst)
    assert sol.value == 3
    assert sol.primal[:2] == (1, 1)
    max_form = solve_lp(covering_to_lp(inst))
    assert verify_certificate(covering_to_lp(inst), max_form)


def test_covering_box_blocks():
    sol = solve_covering_box(CoveringInstance(((1,),), (F(2),), (F(1),), (1,)))
    assert sol.status == INFEASIBLE


def test_covering_prefers_cheap_mix():
    # Covering both rows with the joint column is cheaper than two singles.
    inst = CoveringInstance(((1, 0, 1), (0, 1, 1)),
                            (F(1), F(1)), (F(2), F(2), F(3)), (2, 2, 2))
    sol = solve_covering_box(inst)
    assert sol.value == 3
    assert sol.primal[2] == 1


def test_rational_serialization():
    assert fmt_rational(F(3)) == "3"
    assert fmt_rational(F(1, 2)) == "1/2"
    assert parse_rational("7/3") == F(7, 3)
    assert parse_rational("0.1") == F(1, 10)
