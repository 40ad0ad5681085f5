"""Scalar-linear solvability, minimal partial solutions, field arithmetic."""

from fractions import Fraction
from itertools import product

import pytest

from capregion.lincode import (
    FieldSpec,
    enumerate_minimal_partial_solutions,
    enumerate_weight_vectors,
    field_ops,
    is_scalar_linear_solvable,
    min_cost_scalar_linear,
    verify_partial_solution,
)
from capregion.network import parse_network
from capregion.steiner import enumerate_minimal_steiner_trees

from test_network import BUTTERFLY, CUT_BUTTERFLY, DIAMOND

GF2 = FieldSpec(2)

PARALLEL = """\
node s1
node t1
node s2
node t2
edge s1 t1 1
edge s2 t2 1
message m1 s1 t1
message m2 s2 t2
"""


def test_field_axioms_small_primes():
    for q in (2, 3, 5):
        f = field_ops(q)
        for a, b in product(range(q), repeat=2):
            assert f.add(a, b) == (a + b) % q
            assert f.mul(a, b) == (a * b) % q
        for a in range(1, q):
            assert f.mul(a, f.inverse(a)) == 1


def test_field_examples():
    assert field_ops(2).add(1, 1) == 0
    assert field_ops(3).inverse(2) == 2
    assert field_ops(5).mul(3, 4) == 2


def test_field_requires_prime():
    with pytest.raises(ValueError):
        field_ops(4)
    with pytest.raises(ValueError):
        FieldSpec(6)


def test_butterfly_coding_solvable():
    net = parse_network(BUTTERFLY)
    sol = is_scalar_linear_solvable(net, (1, 1), GF2)
    assert sol is not None
    assert sol.active_edges == frozenset(range(7))
    assert verify_partial_solution(net, sol, GF2)
    # u->v (edge 2) must carry m1+m2: coefficient 1 on both of its inputs.
    row = next(r for r in sol.edge_coefficients if r[0] == 2)
    assert set(row[1]) == {("e", 0), ("e", 1)}
    assert row[2] == (1, 1)


def test_cut_butterfly_unsolvable():
    net = parse_network(CUT_BUTTERFLY)
    for q in (2, 3, 5):
        assert is_scalar_linear_solvable(net, (1, 1), FieldSpec(q)) is None


def test_zero_weight_trivially_solvable():
    net = parse_network(BUTTERFLY)
    sol = is_scalar_linear_solvable(net, (0, 0), GF2)
    assert sol is not None and sol.active_edges == frozenset()


def test_weight_enumeration_butterfly():
    net = parse_network(BUTTERFLY)
    assert enumerate_weight_vectors(net, GF2) == ((0, 0), (0, 1), (1, 0), (1, 1))


def test_weight_enumeration_diamond():
    net = parse_network(DIAMOND)
    assert enumerate_weight_vectors(net, GF2) == ((0,), (1,))


def test_weight_enumeration_parallel():
    net = parse_network(PARALLEL)
    assert len(enumerate_weight_vectors(net, GF2)) == 4


def test_weight_enumeration_downward_closed():
    for text in (BUTTERFLY, PARALLEL):
        net = parse_network(text)
        weights = set(enumerate_weight_vectors(net, GF2))
        for w in weights:
            for v in product((0, 1), repeat=len(w)):
                if all(vi <= wi for vi, wi in zip(v, w)):
                    assert v in weights


def test_minimal_solutions_unit_weight_match_trees():
    # Unit-weight minimal active sets are exactly the minimal Steiner trees.
    for text, w, msg in ((DIAMOND, (1,), 0), (BUTTERFLY, (1, 0), 0),
                         (BUTTERFLY, (0, 1), 1)):
        net = parse_network(text)
        sols = enumerate_minimal_partial_solutions(net, w, GF2)
        actives = {s.active_edges for s in sols}
        trees = {t.edge_set() for t in enumerate_minimal_steiner_trees(net, msg)}
        assert trees <= actives  # routing embeds into scalar-linear
        assert trees == actives  # and nothing else is minimal for a unit weight


def test_butterfly_full_weight_unique_minimal():
    net = parse_network(BUTTERFLY)
    sols = enumerate_minimal_partial_solutions(net, (1, 1), GF2)
    assert len(sols) == 1
    assert sols[0].active_edges == frozenset(range(7))
    assert verify_partial_solution(net, sols[0], GF2)


def test_parallel_full_weight_union():
    net = parse_network(PARALLEL)
    sols = enumerate_minimal_partial_solutions(net, (1, 1), GF2)
    assert [s.active_edges for s in sols] == [frozenset({0, 1})]


def test_all_witnesses_verify():
    for text in (DIAMOND, BUTTERFLY, PARALLEL):
        net = parse_network(text)
        for w in enumerate_weight_vectors(net, GF2):
            for sol in enumerate_minimal_partial_solutions(net, w, GF2):
                assert verify_partial_solution(net, sol, GF2)


def test_witnesses_verify_over_gf3():
    net = parse_network(BUTTERFLY)
    f3 = FieldSpec(3)
    sol = is_scalar_linear_solvable(net, (1, 1), f3)
    assert sol is not None
    assert verify_partial_solution(net, sol, f3)


def test_min_cost_scalar_linear_butterfly():
    net = parse_network(BUTTERFLY)
    _, cost = min_cost_scalar_linear(net, (1, 1), [Fraction(1)] * 7, GF2)
    assert cost == 7


def test_min_cost_scalar_linear_diamond():
    net = parse_network(DIAMOND)
    lengths = [Fraction(3), Fraction(1), Fraction(1), Fraction(1)]
    sol, cost = min_cost_scalar_linear(net, (1,), lengths, GF2)
    assert cost == 2 and sol.active_edges == frozenset({1, 3})


def test_min_cost_zero_weight():
    net = parse_network(DIAMOND)
    sol, cost = min_cost_scalar_linear(net, (0,), [Fraction(1)] * 4, GF2)
    assert cost == 0 and sol.active_edges == frozenset()


def test_corrupted_witness_fails_verifier():
    net = parse_network(BUTTERFLY)
    sol = is_scalar_linear_solvable(net, (1, 1), GF2)
    rows = list(sol.decode_coefficients)
    x, j, refs, coeffs = rows[0]
    rows[0] = (x, j, refs, tuple((c + 1) % 2 for c in coeffs))
    from capregion.lincode import PartialScalarLinearSolution
    bad = PartialScalarLinearSolution(sol.weight, sol.active_edges,
                                      sol.edge_coefficients, tuple(rows))
    assert not verify_partial_solution(net, bad, GF2)
