"""Seeded random network corpus for the acceptance sweeps.

Generation is rejection-based: random layered DAGs are kept only when they
validate and stay within desk-scale limits (a cap on the total minimal
Steiner tree count keeps brute-force vertex enumeration tractable on every
emitted instance).  Output is byte-deterministic for a fixed seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from capregion.network import (
    Edge,
    Message,
    Network,
    reachable_from,
    serialize_network,
    validate_network,
)
from capregion.steiner import enumerate_minimal_steiner_trees


class CorpusError(RuntimeError):
    """The requested corpus could not be generated within the retry budget."""


@dataclass(frozen=True)
class CorpusSpec:
    count: int = 25
    nodes: tuple[int, int] = (4, 8)
    edges: tuple[int, int] = (5, 12)
    messages: int = 2
    capacities: tuple[int, int] = (1, 3)
    seed: int = 1
    max_receivers: int = 2
    tree_cap: int = 10  # total minimal Steiner trees per network

    def __post_init__(self):
        if self.messages not in (1, 2):
            raise ValueError("corpus supports 1 or 2 messages")
        for lo, hi in (self.nodes, self.edges, self.capacities):
            if not 0 < lo <= hi:
                raise ValueError("empty range")


def _random_network(rng: random.Random, spec: CorpusSpec) -> Network | None:
    n = rng.randint(*spec.nodes)
    if n < 2:
        return None
    nodes = tuple(f"n{i}" for i in range(n))
    m_edges = rng.randint(*spec.edges)
    edges = []
    for _ in range(m_edges):
        i = rng.randrange(n - 1)
        j = rng.randrange(i + 1, n)
        edges.append(Edge(nodes[i], nodes[j], rng.randint(*spec.capacities)))
    shell = Network(nodes, tuple(edges), ())
    messages = []
    for k in range(spec.messages):
        source = nodes[rng.randrange(n)]
        candidates = sorted(reachable_from(shell, source) - {source})
        if not candidates:
            return None
        want = rng.randint(1, spec.max_receivers)
        receivers = tuple(sorted(rng.sample(candidates, min(want, len(candidates)))))
        messages.append(Message(f"m{k + 1}", source, receivers))
    return Network(nodes, tuple(edges), tuple(messages))


def gen_corpus(spec: CorpusSpec) -> list[tuple[str, str]]:
    """Generate ``spec.count`` validated networks as (filename, text) pairs."""
    rng = random.Random(spec.seed)
    out: list[tuple[str, str]] = []
    budget = 500 * spec.count
    while len(out) < spec.count:
        budget -= 1
        if budget < 0:
            raise CorpusError("retry budget exhausted; spec looks unsatisfiable")
        net = _random_network(rng, spec)
        if net is None or not validate_network(net).ok:
            continue
        total_trees = sum(len(enumerate_minimal_steiner_trees(net, i))
                          for i in range(net.n_messages))
        if total_trees > spec.tree_cap:
            continue
        out.append((f"net{len(out):03d}.net", serialize_network(net)))
    return out
