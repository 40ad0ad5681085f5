"""Exact 2D geometry: hulls, duality round-trips, membership, closure."""

from fractions import Fraction

import pytest

from capregion.polytope import (
    Halfspace,
    convex_hull_2d,
    down_closure,
    halfspace,
    hull_1d,
    membership,
    parse_region,
    reflect_symmetrize,
    serialize_region,
    vertices_from_facets_2d,
)

F = Fraction


def test_hull_triangle():
    r = convex_hull_2d([(0, 0), (1, 0), (0, 1)])
    assert r.vertices == ((F(0), F(0)), (F(1), F(0)), (F(0), F(1)))
    assert set(r.facets) == {
        Halfspace((0, -1), F(0)),
        Halfspace((1, 1), F(1)),
        Halfspace((-1, 0), F(0)),
    }


def test_hull_drops_interior_point():
    r = convex_hull_2d([(0, 0), (1, 0), (0, 1), (F(1, 4), F(1, 4))])
    assert r.vertices == ((F(0), F(0)), (F(1), F(0)), (F(0), F(1)))


def test_hull_square():
    r = convex_hull_2d([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert len(r.vertices) == 4 and len(r.facets) == 4


def test_hull_drops_collinear_boundary_point():
    r = convex_hull_2d([(0, 0), (2, 0), (1, 0), (0, 1)])
    assert (F(1), F(0)) not in r.vertices


def test_hull_idempotent():
    r = convex_hull_2d([(0, 0), (3, 0), (1, 2), (0, 1), (2, 2)])
    again = convex_hull_2d(r.vertices)
    assert again == r


def test_hull_empty_raises():
    with pytest.raises(ValueError):
        convex_hull_2d([])


def test_degenerate_hull_point_and_segment():
    point = convex_hull_2d([(1, 2)])
    assert point.vertices == ((F(1), F(2)),)
    assert membership(point, (1, 2)) and not membership(point, (1, 1))
    seg = convex_hull_2d([(0, 0), (2, 2), (1, 1)])
    assert seg.vertices == ((F(0), F(0)), (F(2), F(2)))
    assert membership(seg, (F(1, 2), F(1, 2)))
    assert not membership(seg, (1, 0)) and not membership(seg, (3, 3))


def test_v_h_roundtrip():
    for pts in ([(0, 0), (1, 0), (0, 1)],
                [(0, 0), (1, 0), (1, 1), (0, 1)],
                [(0, 0), (2, 0), (F(3, 2), F(1, 2)), (0, 1)]):
        r = convex_hull_2d(pts)
        assert set(vertices_from_facets_2d(r.facets)) == set(r.vertices)


def test_membership_boundary_and_outside():
    r = convex_hull_2d([(0, 0), (1, 0), (0, 1)])
    assert membership(r, (F(1, 2), F(1, 2)))        # on r1+r2 <= 1
    assert not membership(r, (F(3, 4), F(1, 2)))
    assert membership(r, (0, 0))


def test_membership_dimension_mismatch():
    r = convex_hull_2d([(0, 0), (1, 0), (0, 1)])
    with pytest.raises(ValueError):
        membership(r, (1,))


def test_hull_1d():
    r = hull_1d([(F(2),), (F(0),), (F(1),)])
    assert r.vertices == ((F(0),), (F(2),))
    assert membership(r, (F(3, 2),)) and not membership(r, (F(5, 2),))


def test_down_closure_single_point():
    r = down_closure([(1, 1)])
    assert set(r.vertices) == {(F(0), F(0)), (F(1), F(0)), (F(0), F(1)), (F(1), F(1))}


def test_down_closure_simplex():
    r = down_closure([(1, 0), (0, 1)])
    assert set(r.vertices) == {(F(0), F(0)), (F(1), F(0)), (F(0), F(1))}


def test_down_closure_empty_is_origin():
    r = down_closure([], dimension=2)
    assert r.vertices == ((F(0), F(0)),)
    assert membership(r, (0, 0)) and not membership(r, (F(1, 1000), 0))


def test_down_closure_rejects_negative():
    with pytest.raises(ValueError):
        down_closure([(-1, 0)])


def test_down_closure_3d_vertices():
    r = down_closure([(1, 1, 1)], dimension=3)
    assert len(r.vertices) == 8 and r.facets == ()


def test_reflect_symmetrize():
    # oracle for the butterfly routing triangle r1 + r2 <= 1
    def oracle(direction):
        total = direction[0] + direction[1]
        return Fraction(1, 1) / total

    sym = reflect_symmetrize(oracle)
    lam, point = sym((-1, -1))
    assert lam == F(1, 2) and point == (F(-1, 2), F(-1, 2))
    lam, point = sym((1, 1))
    assert point == (F(1, 2), F(1, 2))
    lam, point = sym((-1, 1))
    assert point == (F(-1, 2), F(1, 2))
    with pytest.raises(ValueError):
        sym((0, 0))


def test_halfspace_normalization():
    h = halfspace((F(2, 3), F(4, 3)), F(2))
    assert h.normal == (1, 2) and h.offset == 3


def test_region_serialization_roundtrip():
    r = convex_hull_2d([(0, 0), (F(1, 2), 0), (0, F(2, 3))])
    text = serialize_region(r)
    assert "vertex 1/2 0" in text
    back = parse_region(text)
    assert back == r
