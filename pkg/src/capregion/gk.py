"""Multiplicative-weights approximate ray oracles (concurrent packing).

Both oracles follow the standard concurrent-flow template.  Edge lengths
start at delta / c(e) with delta = (m / (1 - eps))**(-1/eps); each phase
routes the (scaled) demand of every queried message along successively
cheapest columns in bottleneck-limited increments, multiplying the length of
every used edge e by (1 + eps * increment / c(e)); the run stops once the
total weighted length sum(c(e) l(e)) reaches 1.  The accumulated packing is
then rescaled by its exact worst edge violation, so the reported value is a
certified lower bound on the true boundary scale regardless of the float
bookkeeping inside the loop.

Constants: eps = omega / (3 (1 + omega)) keeps the template's worst-case
ratio inside (1 + omega) with margin ((1-eps)^-3 <= 1+omega); demands are
rescaled so a run lasts roughly _T_TARGET phases, and runs finishing in
fewer than _T_MIN phases are retried at half scale so phase quantization
stays negligible.  The realized ratio is validated against the exact oracle
on the test corpus.

Routing oracles pick each increment's column by scanning the message's tree
list ("exact": guarantee factor 1) or by a shortest-path union ("sp":
within the message's receiver count).  The semi-linear oracle instead costs
each weight class per phase, asks the exact box-constrained covering LP for
the cheapest class mix meeting the demands, and packs that mix.  The
covering instances are quantized to small integers (48-bit costs, 20-bit
demands) before the exact solve so rational pivots stay cheap; the oracle
is exact on the instance it is given, and the quantization noise is far
inside the validated slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from capregion.exactlp import INFEASIBLE, CoveringInstance, solve_covering_box
from capregion.packing import ColumnSystem, RayAnswer, direction_vector
from capregion.steiner import min_cost_steiner_shortest_paths

_T_TARGET = 250   # aimed-for phase count per run
_T_MIN = 60       # below this, halve the demand scale and rerun
_MAX_RESCALES = 24


class GKPhaseCapError(RuntimeError):
    """Step budget exhausted; signals a misconfigured epsilon."""


@dataclass(frozen=True)
class GKConfig:
    """Knobs for the routing oracle: target slack ``omega`` (> 0), column
    choice rule, optional epsilon override, and a safety cap on the total
    number of packing increments."""

    omega: Fraction
    steiner_oracle: str = "exact"  # 'exact' | 'shortest_paths'
    epsilon: float | None = None
    phase_cap: int = 2_000_000

    def __post_init__(self):
        if Fraction(self.omega) <= 0:
            raise ValueError("omega must be positive")
        if self.steiner_oracle not in ("exact", "shortest_paths"):
            raise ValueError(f"unknown steiner oracle {self.steiner_oracle!r}")
        if self.epsilon is not None and not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")


@dataclass(frozen=True)
class SemiGKConfig:
    """Same template for the semi-linear region; both inner oracles (covering
    LP and per-class min-cost scan) are exact."""

    omega: Fraction
    epsilon: float | None = None
    phase_cap: int = 2_000_000

    def __post_init__(self):
        if Fraction(self.omega) <= 0:
            raise ValueError("omega must be positive")


def derive_epsilon(omega) -> float:
    return float(omega) / (3.0 * (1.0 + float(omega)))


class _Arrays:
    """Float views of a column system for the inner loops."""

    def __init__(self, system: ColumnSystem):
        self.caps = np.array([float(c) for c in system.capacities])
        self.edge_idx = [np.array(col.edges, dtype=np.intp) for col in system.columns]
        self.incidence = np.zeros((len(system.columns), len(system.capacities)))
        for j, idx in enumerate(self.edge_idx):
            self.incidence[j, idx] = 1.0
        self.bottleneck = np.array([self.caps[idx].min() for idx in self.edge_idx]) \
            if system.columns else np.zeros(0)


def _finalize(system: ColumnSystem, d, demanded, x_float: dict[int, float]):
    """Exact rescale of the accumulated packing to feasibility."""
    x = {j: Fraction(v) for j, v in sorted(x_float.items()) if v > 0}
    if not x:
        return Fraction(0), ()
    load = [Fraction(0)] * len(system.capacities)
    for j, v in x.items():
        for e in system.columns[j].edges:
            load[e] += v
    worst = max(load[e] / c for e, c in enumerate(system.capacities) if load[e] > 0)
    scaled = {j: v / worst for j, v in x.items()}
    rates = [Fraction(0)] * system.n_messages
    for j, v in scaled.items():
        for i in system.columns[j].coverage:
            rates[i] += v
    lam = min(rates[i] / d[i] for i in demanded)
    return lam, tuple(sorted(scaled.items()))


def _run_setup(system: ColumnSystem, d, demanded, epsilon):
    m = len(system.capacities)
    delta = (m / (1.0 - epsilon)) ** (-1.0 / epsilon)
    sigma = math.log((1.0 + epsilon) / delta) / math.log1p(epsilon)
    lam_ub = min(float(system.rate_bounds[i]) / float(d[i]) for i in demanded)
    return delta, sigma, lam_ub


def ray_oracle_gk_routing(net, system: ColumnSystem, q, cfg: GKConfig) -> RayAnswer:
    """Approximate ray answer for the tree-packing region.

    Returns a feasible packing whose value lam_hat satisfies
    lam_hat <= lam_max <= (1 + omega) * A * lam_hat with A = 1 for the exact
    column rule and A = max receiver count for the shortest-path rule
    (empirically validated; see module docstring).
    """
    d = direction_vector(q, system.n_messages)
    demanded = [i for i, v in enumerate(d) if v > 0]
    family = {i: np.array([j for j, col in enumerate(system.columns)
                           if col.coverage == (i,)], dtype=np.intp)
              for i in demanded}
    omega = Fraction(cfg.omega)
    if cfg.steiner_oracle == "exact":
        guarantee = 1
    else:
        guarantee = max(len(net.messages[i].receivers) for i in demanded)
    if any(family[i].size == 0 for i in demanded):
        return RayAnswer(Fraction(0), (), (Fraction(0), Fraction(0)))

    arrays = _Arrays(system)
    eps = cfg.epsilon if cfg.epsilon is not None else derive_epsilon(omega)
    delta, sigma, lam_ub = _run_setup(system, d, demanded, eps)
    if lam_ub == 0.0:
        return RayAnswer(Fraction(0), (), (Fraction(0), Fraction(0)))
    by_edges = {frozenset(col.edges): j for j, col in enumerate(system.columns)}
    steps = 0
    scale = lam_ub * sigma / _T_TARGET
    best: tuple[Fraction, tuple] | None = None

    for _ in range(_MAX_RESCALES):
        lengths = delta / arrays.caps
        x: dict[int, float] = {}
        phases = 0
        while True:
            for i in demanded:
                remaining = float(d[i]) * scale
                while remaining > 0.0:
                    steps += 1
                    if steps > cfg.phase_cap:
                        raise GKPhaseCapError("increment budget exhausted")
                    if cfg.steiner_oracle == "exact":
                        fam = family[i]
                        costs = arrays.incidence[fam] @ lengths
                        j = int(fam[int(np.argmin(costs))])
                    else:
                        tree, _ = min_cost_steiner_shortest_paths(
                            net, i, [Fraction(v) for v in lengths])
                        j = by_edges[tree.edge_set()]
                    f = min(remaining, float(arrays.bottleneck[j]))
                    x[j] = x.get(j, 0.0) + f
                    idx = arrays.edge_idx[j]
                    lengths[idx] *= 1.0 + eps * f / arrays.caps[idx]
                    remaining -= f
            phases += 1
            if float(lengths @ arrays.caps) >= 1.0:
                break
        lam, packing = _finalize(system, d, demanded, x)
        if best is None or lam > best[0]:
            best = (lam, packing)
        if phases >= _T_MIN:
            break
        scale /= 2.0

    lam, packing = best
    return RayAnswer(lam, packing, (lam, (1 + omega) * guarantee * lam))


def ray_oracle_gk_covering(system: ColumnSystem, q, cfg: SemiGKConfig) -> RayAnswer:
    """Approximate ray answer for the semi-linear region.

    Each phase costs every weight class at current lengths, solves the exact
    covering LP (rows: queried messages; columns: weight classes; box: the
    ceiling of the per-phase demand, never binding at the optimum), and packs
    the returned class mix in bottleneck-limited increments.
    """
    d = direction_vector(q, system.n_messages)
    demanded = [i for i, v in enumerate(d) if v > 0]
    classes = sorted({col.coverage for col in system.columns})
    members = {w: np.array([j for j, col in enumerate(system.columns)
                            if col.coverage == w], dtype=np.intp) for w in classes}
    omega = Fraction(cfg.omega)
    if any(all(i not in w for w in classes) for i in demanded):
        return RayAnswer(Fraction(0), (), (Fraction(0), Fraction(0)))

    arrays = _Arrays(system)
    eps = cfg.epsilon if cfg.epsilon is not None else derive_epsilon(omega)
    delta, sigma, lam_ub = _run_setup(system, d, demanded, eps)
    if lam_ub == 0.0:
        return RayAnswer(Fraction(0), (), (Fraction(0), Fraction(0)))
    steps = 0
    scale = lam_ub * sigma / _T_TARGET
    best: tuple[Fraction, tuple] | None = None

    for _ in range(_MAX_RESCALES):
        lengths = delta / arrays.caps
        x: dict[int, float] = {}
        phases = 0
        # demands are fixed per run; quantized to keep the exact LP arithmetic
        # on small numbers (the covering oracle stays exact on its instance)
        demand = tuple(Fraction(round(float(d[i]) * scale * 2**20), 2**20)
                       for i in demanded)
        rows = tuple(tuple(1 if i in w else 0 for w in classes) for i in demanded)
        box = max(1, math.ceil(max(demand)))
        while True:
            costs = {}
            raw = {}
            for w in classes:
                mem = members[w]
                cvals = arrays.incidence[mem] @ lengths
                raw[w] = float(cvals[int(np.argmin(cvals))])
            cscale = 2**40 / max(raw.values())
            for w in classes:
                costs[w] = Fraction(max(1, round(raw[w] * cscale)))
            inst = CoveringInstance(rows, demand,
                                    tuple(costs[w] for w in classes),
                                    tuple(box for _ in classes))
            mix = solve_covering_box(inst)
            assert mix.status != INFEASIBLE, "box never binds below the demand ceiling"
            for w, amount in zip(classes, mix.primal):
                remaining = float(amount)
                while remaining > 0.0:
                    steps += 1
                    if steps > cfg.phase_cap:
                        raise GKPhaseCapError("increment budget exhausted")
                    mem = members[w]
                    cvals = arrays.incidence[mem] @ lengths
                    j = int(mem[int(np.argmin(cvals))])
                    f = min(remaining, float(arrays.bottleneck[j]))
                    x[j] = x.get(j, 0.0) + f
                    idx = arrays.edge_idx[j]
                    lengths[idx] *= 1.0 + eps * f / arrays.caps[idx]
                    remaining -= f
            phases += 1
            if float(lengths @ arrays.caps) >= 1.0:
                break
        lam, packing = _finalize(system, d, demanded, x)
        if best is None or lam > best[0]:
            best = (lam, packing)
        if phases >= _T_MIN:
            break
        scale /= 2.0

    lam, packing = best
    return RayAnswer(lam, packing, (lam, (1 + omega) * lam))
