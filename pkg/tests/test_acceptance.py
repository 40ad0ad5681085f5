"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines live.
Corpus-wide sweeps share session fixtures; build times are recorded and
charged against the criterion that first needs the structure.
"""

import random
import time
from fractions import Fraction

import pytest

from capregion.catalog import butterfly, diamond
from capregion.corpus import CorpusSpec, gen_corpus
from capregion.exactlp import lp, solve_lp, verify_certificate
from capregion.gk import GKConfig, SemiGKConfig
from capregion.lincode import (
    FieldSpec,
    is_scalar_linear_solvable,
    verify_partial_solution,
)
from capregion.network import parse_network, rate_upper_bounds, validate_network
from capregion.polytope import Halfspace, convex_hull_2d, membership
from capregion.routing import (
    build_routing_polytope,
    exact_region_2d,
    exact_region_via_vertices,
    ray_oracle_exact,
    ray_oracle_gk,
    reconstruct_region,
    routing_capacity_scalar,
)
from capregion.semilinear import (
    build_semi_polytope,
    region_containment,
    semi_exact_region_2d,
    semi_ray_oracle_exact,
    semi_ray_oracle_gk,
)

from test_exactlp import brute_force_max
from test_network import CUT_BUTTERFLY

F = Fraction
GF2 = FieldSpec(2)
OMEGA = F(1, 10)
RAYS = ((1, 1), (1, 2), (2, 1), (1, 0), (0, 1))

TRIANGLE_VERTICES = ((F(0), F(0)), (F(1), F(0)), (F(0), F(1)))
TRIANGLE_FACETS = {Halfspace((-1, 0), F(0)), Halfspace((0, -1), F(0)),
                   Halfspace((1, 1), F(1))}
SQUARE_VERTICES = {(F(0), F(0)), (F(1), F(0)), (F(1), F(1)), (F(0), F(1))}


def report(number: int, description: str, ok: bool):
    print(f"\nACCEPTANCE {number:02d} {'PASS' if ok else 'FAIL'}: {description}")
    assert ok, f"criterion {number}: {description}"


@pytest.fixture(scope="session")
def corpus():
    files = gen_corpus(CorpusSpec(count=25, nodes=(4, 8), edges=(5, 12),
                                  messages=2, capacities=(1, 3),
                                  seed=20260810))
    nets = [parse_network(text) for _, text in files]
    assert len(nets) >= 25
    assert all(validate_network(n).ok for n in nets)
    assert all(len(n.nodes) <= 8 and len(n.edges) <= 12 for n in nets)
    assert all(e.capacity <= 3 for n in nets for e in n.edges)
    return nets


@pytest.fixture(scope="session")
def routing_specs(corpus):
    start = time.monotonic()
    specs = [build_routing_polytope(net) for net in corpus]
    return specs, time.monotonic() - start


@pytest.fixture(scope="session")
def semi_specs(corpus):
    start = time.monotonic()
    specs = [build_semi_polytope(net, GF2) for net in corpus]
    return specs, time.monotonic() - start


def test_c01_butterfly_routing_region_exact():
    spec = build_routing_polytope(butterfly())
    start = time.monotonic()
    regions = [exact_region_2d(spec), exact_region_via_vertices(spec),
               reconstruct_region(spec).region]
    elapsed = time.monotonic() - start
    ok = all(r.vertices == TRIANGLE_VERTICES and set(r.facets) == TRIANGLE_FACETS
             for r in regions) and elapsed < 1.0
    report(1, "butterfly routing region is the exact triangle by all three "
              f"exact methods in {elapsed:.2f}s (< 1s)", ok)


def test_c02_butterfly_semi_region_unit_square():
    start = time.monotonic()
    semi_spec = build_semi_polytope(butterfly(), GF2)
    semi = semi_exact_region_2d(semi_spec)
    routing = exact_region_2d(build_routing_polytope(butterfly()))
    elapsed = time.monotonic() - start
    ok = (set(semi.vertices) == SQUARE_VERTICES
          and region_containment(routing, semi)
          and not region_containment(semi, routing)
          and elapsed < 5.0)
    report(2, "butterfly semi-region over GF(2) is the exact unit square, "
              f"strictly containing the routing triangle, in {elapsed:.2f}s "
              "(< 5s)", ok)


def test_c03_scalar_capacities():
    bf = routing_capacity_scalar(build_routing_polytope(butterfly()))
    dm = routing_capacity_scalar(build_routing_polytope(diamond()))
    ok = bf == F(1, 2) and dm == 2
    report(3, f"all-ones boundary scales: butterfly {bf}, diamond {dm} "
              "(exact rationals 1/2 and 2)", ok)


def test_c04_routing_gk_guarantee(routing_specs):
    specs, build_time = routing_specs
    cfg = GKConfig(omega=OMEGA)
    start = time.monotonic()
    ok = True
    for spec in specs:
        for q in RAYS:
            exact = ray_oracle_exact(spec, q).lam
            approx = ray_oracle_gk(spec, q, cfg)
            if not approx.lam <= exact <= (1 + OMEGA) * approx.lam:
                ok = False
    elapsed = time.monotonic() - start + build_time
    ok = ok and elapsed < 60.0
    report(4, "routing oracle bracket holds on all 125 corpus rays "
              f"(omega=0.1, exact tree rule), sweep {elapsed:.1f}s (< 60s)", ok)


def test_c05_semi_gk_guarantee(semi_specs):
    specs, build_time = semi_specs
    cfg = SemiGKConfig(omega=OMEGA)
    start = time.monotonic()
    ok = True
    for spec in specs:
        for q in RAYS:
            exact = semi_ray_oracle_exact(spec, q).lam
            approx = semi_ray_oracle_gk(spec, q, cfg)
            lo, hi = approx.bracket
            if not lo <= exact <= hi:
                ok = False
    elapsed = time.monotonic() - start + build_time
    ok = ok and elapsed < 120.0
    report(5, "semi-linear oracle bracket holds on all 125 corpus rays "
              f"(omega=0.1, GF(2)), sweep {elapsed:.1f}s (< 120s)", ok)


def test_c06_cross_method_equivalence(routing_specs):
    specs, _ = routing_specs
    ok = True
    for spec in specs:
        support = exact_region_2d(spec)
        vertices = exact_region_via_vertices(spec)
        rays = reconstruct_region(spec).region
        if not (support.vertices == vertices.vertices == rays.vertices):
            ok = False
    report(6, "support refinement, vertex enumeration and ray reconstruction "
              "agree (rational-exact vertex sets) on every corpus instance", ok)


def _region_properties_hold(region, bounds) -> bool:
    hull = convex_hull_2d(region.vertices)
    if hull != region:
        return False
    for v in region.vertices:
        if any(not isinstance(c, Fraction) for c in v):
            return False
        if any(c > g for c, g in zip(v, bounds)):
            return False
        for mask in range(1, 4):
            projected = tuple(F(0) if (mask >> i) & 1 else c
                              for i, c in enumerate(v))
            if not membership(region, projected):
                return False
    return True


def test_c07_region_property_suite(routing_specs, semi_specs):
    rspecs, _ = routing_specs
    sspecs, _ = semi_specs
    ok = True
    for spec, region in (
            [(s, exact_region_2d(s)) for s in rspecs]
            + [(s, semi_exact_region_2d(s)) for s in sspecs]):
        if not _region_properties_hold(region, rate_upper_bounds(spec.net)):
            ok = False
    report(7, "every corpus region (routing and semi) is convex, down-closed, "
              "rational, and bounded by the out-capacity vector", ok)


def test_c08_lp_exactness():
    rng = random.Random(99)
    ok = True
    for _ in range(50):
        n = rng.randint(1, 4)
        m = rng.randint(1, 4)
        rows = [[rng.randint(0, 3) for _ in range(n)] for _ in range(m)]
        for j in range(n):
            if all(rows[i][j] == 0 for i in range(m)):
                rows[rng.randrange(m)][j] = rng.randint(1, 3)
        rhs = [rng.randint(1, 6) for _ in range(m)]
        objective = [rng.randint(0, 5) for _ in range(n)]
        instance = lp(objective, rows, ["<="] * m, rhs)
        sol = solve_lp(instance)  # solve_lp asserts its own certificate
        if not verify_certificate(instance, sol):
            ok = False
        if sol.value != brute_force_max(objective, rows, rhs):
            ok = False
    report(8, "50 random LPs: simplex optimum equals brute-force basic "
              "solution maximum exactly, all certificates verified", ok)


def test_c09_membership_perturbation(routing_specs, semi_specs):
    rspecs, _ = routing_specs
    sspecs, _ = semi_specs
    step = F(1, 1000)
    ok = True
    for region in ([exact_region_2d(s) for s in rspecs]
                   + [semi_exact_region_2d(s) for s in sspecs]):
        for v in region.vertices:
            if not membership(region, v):
                ok = False
            for facet in region.facets:
                tight = sum(n * c for n, c in zip(facet.normal, v)) == facet.offset
                if not tight:
                    continue
                pushed = tuple(c + step * n for c, n in zip(v, facet.normal))
                if membership(region, pushed):
                    ok = False
    report(9, "all corpus region vertices are members; every vertex pushed "
              "1/1000 along a tight facet normal is a non-member", ok)


def test_c10_scalar_linear_verifier(semi_specs):
    specs, _ = semi_specs
    ok = True
    for spec in specs:
        for sol in spec.solutions:
            if not verify_partial_solution(spec.net, sol, GF2):
                ok = False
    witness = is_scalar_linear_solvable(butterfly(), (1, 1), GF2)
    ok = ok and witness is not None and verify_partial_solution(
        butterfly(), witness, GF2)
    cut = parse_network(CUT_BUTTERFLY)
    ok = ok and is_scalar_linear_solvable(cut, (1, 1), GF2) is None
    report(10, "all corpus scalar-linear witnesses pass independent "
               "propagation; butterfly (1,1)/GF(2) solvable, butterfly minus "
               "its middle edge unsolvable", ok)
