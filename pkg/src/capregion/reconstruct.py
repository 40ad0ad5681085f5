"""2D region reconstruction from a ray oracle.

With an exact oracle the boundary between the two axis extremes is resolved
adaptively: a gap between adjacent boundary points closes either when a
probe between them is collinear (the gap lies on one facet line) or when the
intersection point of the two flanking facet lines is confirmed on the
boundary by a ray through it (a vertex).  All tests are exact, so the result
equals the true region.

With an approximate oracle no region is certified: the oracle is sampled on
evenly spread rays and the answers form a point cloud whose per-ray brackets
locate the boundary; the down-closed hull of the cloud is returned as a
sketch only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from capregion.packing import RayAnswer
from capregion.polytope import (
    RegionDescription,
    convex_hull_2d,
    down_closure,
)

Point = tuple[Fraction, Fraction]


class ReconstructionError(RuntimeError):
    """Ray budget exhausted before the boundary was resolved."""


@dataclass(frozen=True)
class ReconstructConfig:
    mode: str = "exact"     # 'exact' | 'cloud'
    rays: int = 64          # cloud mode: number of evenly spread rays
    max_rays: int = 512     # exact mode: termination guard

    def __post_init__(self):
        if self.mode not in ("exact", "cloud"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "cloud" and self.rays < 2:
            raise ValueError("cloud mode needs at least two rays")


@dataclass(frozen=True)
class ReconstructionResult:
    region: RegionDescription
    cloud: tuple[tuple[Point, RayAnswer], ...]  # (direction, oracle answer)
    exact: bool


def _collinear(a: Point, b: Point, c: Point) -> bool:
    return (b[0] - a[0]) * (c[1] - a[1]) == (b[1] - a[1]) * (c[0] - a[0])


def _line(p: Point, q: Point) -> tuple[Fraction, Fraction, Fraction]:
    """Normalized coefficients (a, b, c) of the line a x + b y = c through
    two points."""
    a = q[1] - p[1]
    b = p[0] - q[0]
    c = a * p[0] + b * p[1]
    for lead in (a, b):
        if lead != 0:
            return (a / lead, b / lead, c / lead)
    raise ValueError("coincident points define no line")


def _intersect(l1, l2) -> Point | None:
    a1, b1, c1 = l1
    a2, b2, c2 = l2
    det = a1 * b2 - a2 * b1
    if det == 0:
        return None
    return ((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det)


def reconstruct_region_rays_2d(oracle, cfg: ReconstructConfig = ReconstructConfig()):
    """Reconstruct a 2-message region from ``oracle(direction) -> RayAnswer``.

    Exact mode returns the exact region; cloud mode returns the sampled
    points with their brackets and an uncertified sketch hull.
    """
    if cfg.mode == "cloud":
        return _cloud(oracle, cfg)

    calls = 0
    cloud: list[tuple[Point, RayAnswer]] = []

    def probe(direction: Point) -> Point:
        nonlocal calls
        calls += 1
        if calls > cfg.max_rays:
            raise ReconstructionError(f"exceeded {cfg.max_rays} rays")
        ans = oracle(direction)
        cloud.append((direction, ans))
        return (ans.lam * direction[0], ans.lam * direction[1])

    one, zero = Fraction(1), Fraction(0)
    east = probe((one, zero))
    north = probe((zero, one))
    origin = (zero, zero)
    if east == origin or north == origin:
        # region degenerates onto an axis (or the origin); down-closure of
        # the two probes describes it exactly
        region = down_closure([east, north])
        return ReconstructionResult(region, tuple(cloud), True)

    fan: list[Point] = [east, north]
    lines: list = [None]  # lines[i]: facet line of gap (fan[i], fan[i+1])

    def on_line(line, point: Point) -> bool:
        a, b, c = line
        return a * point[0] + b * point[1] == c

    def insert(k: int, point: Point):
        if point == fan[k] or point == fan[k + 1]:
            raise ReconstructionError("probe returned a gap endpoint")
        fan.insert(k + 1, point)
        lines.insert(k + 1, None)
        for g in (k, k + 1):
            for side in (g - 1, g + 1):
                if 0 <= side < len(lines) and lines[side] is not None:
                    if on_line(lines[side], fan[g]) and on_line(lines[side], fan[g + 1]):
                        lines[g] = lines[side]

    def work_gap(g: int):
        p, q = fan[g], fan[g + 1]
        left = lines[g - 1] if g > 0 else None
        right = lines[g + 1] if g + 1 < len(lines) else None
        for known in (left, right):
            if known is not None and on_line(known, p) and on_line(known, q):
                lines[g] = known
                return
        if left is not None and right is not None and left != right:
            vertex = _intersect(left, right)
            if vertex is not None and vertex[0] > 0 and vertex[1] > 0:
                hit = probe(vertex)
                if hit == vertex:
                    lines[g] = left  # facets meet exactly at this vertex
                    insert(g, vertex)
                    lines[g] = left
                    lines[g + 1] = right
                else:
                    insert(g, hit)
                return
        mid = (p[0] + q[0], p[1] + q[1])
        hit = probe(mid)
        if _collinear(p, hit, q):
            lines[g] = _line(p, q)
        else:
            insert(g, hit)

    # Round-robin passes: every unresolved gap gets one step per pass, so
    # facet lines learned by siblings unlock vertex confirmation before a
    # gap near a vertex is subdivided again (plain first-gap order can
    # bisect forever toward a vertex).
    while any(l is None for l in lines):
        snapshot = [(fan[i], fan[i + 1]) for i, l in enumerate(lines) if l is None]
        for p, q in snapshot:
            g = next((i for i, l in enumerate(lines)
                      if l is None and fan[i] == p and fan[i + 1] == q), None)
            if g is not None:  # gap may have been split or resolved this pass
                work_gap(g)

    points = set(fan) | {origin, (east[0], zero), (zero, north[1])}
    region = convex_hull_2d(points)
    return ReconstructionResult(region, tuple(cloud), True)


def _cloud(oracle, cfg: ReconstructConfig) -> ReconstructionResult:
    n = cfg.rays
    cloud: list[tuple[Point, RayAnswer]] = []
    points: list[Point] = []
    for j in range(n):
        direction = (Fraction(n - 1 - j), Fraction(j))
        ans = oracle(direction)
        cloud.append((direction, ans))
        points.append((ans.lam * direction[0], ans.lam * direction[1]))
    sketch = down_closure(points, dimension=2)
    return ReconstructionResult(sketch, tuple(cloud), False)
