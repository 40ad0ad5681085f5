"""Semi-linear coding capacity region engine.

Columns are the minimal partial scalar-linear solutions of every solvable
weight vector over a fixed prime field; packing one unit of a column
occupies each active edge once and delivers one rate unit of every message
in its weight support.  The projected region contains the routing region
(unit-weight columns are exactly the Steiner trees) and inner-bounds the
full linear coding region.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from capregion.gk import SemiGKConfig, ray_oracle_gk_covering
from capregion.lincode import (
    FieldSpec,
    PartialScalarLinearSolution,
    enumerate_minimal_partial_solutions,
    enumerate_weight_vectors,
)
from capregion.network import Network, rate_upper_bounds
from capregion.packing import (
    ColumnSystem,
    PackingColumn,
    RayAnswer,
    ray_oracle_exact as _system_ray_exact,
    region_from_support,
    support_query as _system_support,
)
from capregion.polytope import RegionDescription
from capregion.reconstruct import (
    ReconstructConfig,
    ReconstructionResult,
    reconstruct_region_rays_2d,
)


@dataclass(frozen=True)
class SemiPolytopeSpec:
    net: Network
    field: FieldSpec
    solutions: tuple[PartialScalarLinearSolution, ...]
    system: ColumnSystem


def build_semi_polytope(net: Network, field: FieldSpec) -> SemiPolytopeSpec:
    """Materialize minimal partial solutions of every nonzero solvable weight
    vector as packing columns (deterministic order: weight, then active set)."""
    if field.q < net.alphabet_size:
        raise ValueError(
            f"field order {field.q} below alphabet size {net.alphabet_size}")
    solutions: list[PartialScalarLinearSolution] = []
    for w in enumerate_weight_vectors(net, field):
        if not any(w):
            continue
        solutions.extend(enumerate_minimal_partial_solutions(net, w, field))
    solutions.sort(key=lambda s: (s.weight, s.sort_key()))
    columns = tuple(
        PackingColumn(tuple(i for i, wi in enumerate(s.weight) if wi),
                      tuple(sorted(s.active_edges)))
        for s in solutions)
    system = ColumnSystem(net.n_messages,
                          tuple(e.capacity for e in net.edges),
                          columns, rate_upper_bounds(net))
    return SemiPolytopeSpec(net, field, tuple(solutions), system)


def semi_ray_oracle_exact(spec: SemiPolytopeSpec, q) -> RayAnswer:
    return _system_ray_exact(spec.system, q)


def semi_ray_oracle_gk(spec: SemiPolytopeSpec, q, cfg: SemiGKConfig) -> RayAnswer:
    return ray_oracle_gk_covering(spec.system, q, cfg)


def semi_support_query(spec: SemiPolytopeSpec, direction):
    return _system_support(spec.system, direction)


def semi_exact_region_2d(spec: SemiPolytopeSpec) -> RegionDescription:
    return region_from_support(spec.system)


def semi_reconstruct_region(spec: SemiPolytopeSpec,
                            cfg: ReconstructConfig = ReconstructConfig(),
                            gk: SemiGKConfig | None = None) -> ReconstructionResult:
    if cfg.mode == "exact":
        oracle = lambda d: semi_ray_oracle_exact(spec, d)
    else:
        gk = gk or SemiGKConfig(omega=Fraction(1, 10))
        oracle = lambda d: semi_ray_oracle_gk(spec, d, gk)
    return reconstruct_region_rays_2d(oracle, cfg)


def region_containment(inner: RegionDescription, outer: RegionDescription) -> bool:
    """Exact containment: every vertex of ``inner`` satisfies every facet of
    ``outer``."""
    if inner.dimension != outer.dimension:
        raise ValueError("dimension mismatch")
    if not outer.facets:
        raise ValueError("outer region has no facet description")
    return all(f.satisfies(v) for v in inner.vertices for f in outer.facets)
