"""Routing capacity region engine.

The region is the projection of the tree-packing polytope (one variable per
minimal Steiner tree, one capacity row per edge) onto per-message rates.
Exact descriptions come from support-query refinement, from brute-force
vertex enumeration of the packing polytope, or from ray-oracle
reconstruction; the approximate path is the multiplicative-weights oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from capregion.gk import GKConfig, ray_oracle_gk_routing
from capregion.network import Network, rate_upper_bounds
from capregion.packing import (
    ColumnSystem,
    PackingColumn,
    RayAnswer,
    RegionTooLargeError,
    enumerate_polytope_vertices,
    ray_oracle_exact as _system_ray_exact,
    region_from_support,
    region_via_vertices,
    support_query as _system_support,
    support_vertex,
)
from capregion.polytope import RegionDescription
from capregion.reconstruct import (
    ReconstructConfig,
    ReconstructionResult,
    reconstruct_region_rays_2d,
)
from capregion.steiner import SteinerTree, enumerate_minimal_steiner_trees


@dataclass(frozen=True)
class RoutingPolytopeSpec:
    net: Network
    trees: tuple[SteinerTree, ...]
    tree_counts: tuple[int, ...]  # per message
    system: ColumnSystem


def build_routing_polytope(net: Network) -> RoutingPolytopeSpec:
    """Materialize all minimal Steiner trees as packing columns."""
    trees: list[SteinerTree] = []
    counts = []
    for i in range(net.n_messages):
        per_message = enumerate_minimal_steiner_trees(net, i)
        counts.append(len(per_message))
        trees.extend(per_message)
    columns = tuple(PackingColumn((t.message,), t.edges) for t in trees)
    system = ColumnSystem(net.n_messages,
                          tuple(e.capacity for e in net.edges),
                          columns, rate_upper_bounds(net))
    return RoutingPolytopeSpec(net, tuple(trees), tuple(counts), system)


def ray_oracle_exact(spec: RoutingPolytopeSpec, q) -> RayAnswer:
    return _system_ray_exact(spec.system, q)


def ray_oracle_gk(spec: RoutingPolytopeSpec, q, cfg: GKConfig) -> RayAnswer:
    return ray_oracle_gk_routing(spec.net, spec.system, q, cfg)


def support_query(spec: RoutingPolytopeSpec, direction):
    return _system_support(spec.system, direction)


def exact_region_2d(spec: RoutingPolytopeSpec) -> RegionDescription:
    return region_from_support(spec.system)


def enumerate_packing_vertices(spec: RoutingPolytopeSpec,
                               basis_cap: int = 2_000_000):
    """All vertices of the tree-packing polytope (brute force over tight
    constraint subsets; see :func:`capregion.packing.enumerate_polytope_vertices`)."""
    return enumerate_polytope_vertices(spec.system, basis_cap)


def exact_region_via_vertices(spec: RoutingPolytopeSpec,
                              basis_cap: int = 2_000_000) -> RegionDescription:
    """Region as the hull of the rate images of the packing polytope's
    vertices (the projection map sums tree multiplicities per message)."""
    return region_via_vertices(spec.system, basis_cap)


def reconstruct_region(spec: RoutingPolytopeSpec,
                       cfg: ReconstructConfig = ReconstructConfig(),
                       gk: GKConfig | None = None) -> ReconstructionResult:
    """Ray-oracle reconstruction; exact mode uses the exact oracle, cloud
    mode samples the multiplicative-weights oracle."""
    if cfg.mode == "exact":
        oracle = lambda d: ray_oracle_exact(spec, d)
    else:
        gk = gk or GKConfig(omega=Fraction(1, 10))
        oracle = lambda d: ray_oracle_gk(spec, d, gk)
    return reconstruct_region_rays_2d(oracle, cfg)


def routing_capacity_scalar(spec: RoutingPolytopeSpec) -> Fraction:
    """Boundary scale along the all-ones ray (the classical scalar routing
    capacity)."""
    ones = tuple(Fraction(1) for _ in range(spec.net.n_messages))
    return ray_oracle_exact(spec, ones).lam


# re-exported names used by callers of this module
__all__ = [
    "GKConfig",
    "RayAnswer",
    "ReconstructConfig",
    "RegionTooLargeError",
    "RoutingPolytopeSpec",
    "build_routing_polytope",
    "enumerate_packing_vertices",
    "exact_region_2d",
    "exact_region_via_vertices",
    "ray_oracle_exact",
    "ray_oracle_gk",
    "reconstruct_region",
    "routing_capacity_scalar",
    "support_query",
    "support_vertex",
]
