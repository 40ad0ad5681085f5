"""Directed Steiner trees: enumeration and min-cost queries.

A Steiner tree for a message is a minimal edge set containing a directed
path from the message's source to each of its receivers.  Minimal sets
coincide with irredundant unions of one source-to-receiver path per
receiver, which is how enumeration proceeds; the min-cost query is answered
exactly by scanning the enumerated list, or approximately (within a factor
of the receiver count) by a union of shortest paths.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from capregion.network import Network, in_edge_indices, out_edge_indices


@dataclass(frozen=True)
class SteinerTree:
    message: int
    edges: tuple[int, ...]  # sorted edge indices

    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)


def _paths(net: Network, source: str, target: str) -> list[tuple[int, ...]]:
    """All directed paths source -> target as edge index tuples (DAG)."""
    out = out_edge_indices(net)
    results: list[tuple[int, ...]] = []

    def grow(node: str, used: list[int]):
        if node == target:
            results.append(tuple(used))
            return
        for i in out[node]:
            used.append(i)
            grow(net.edges[i].head, used)
            used.pop()

    grow(source, [])
    return results


def connects(net: Network, message: int, edges: frozenset[int]) -> bool:
    """Does ``edges`` contain a path from the message source to every receiver?"""
    m = net.messages[message]
    out = out_edge_indices(net)
    seen = {m.source}
    stack = [m.source]
    while stack:
        u = stack.pop()
        for i in out[u]:
            if i in edges:
                v = net.edges[i].head
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
    return all(r in seen for r in m.receivers)


def is_minimal(net: Network, message: int, edges: frozenset[int]) -> bool:
    return connects(net, message, edges) and all(
        not connects(net, message, edges - {e}) for e in edges)


@lru_cache(maxsize=None)
def enumerate_minimal_steiner_trees(net: Network, message: int) -> tuple[SteinerTree, ...]:
    """All minimal Steiner trees of a message, deduplicated, sorted by edge tuple.

    Every minimal tree is the union of one path per receiver (minimality
    forces equality), so candidates are path unions filtered down to the
    sets that break under any single edge removal.
    """
    m = net.messages[message]
    per_receiver = [_paths(net, m.source, r) for r in m.receivers]
    seen: set[frozenset[int]] = set()
    for combo in product(*per_receiver):
        union = frozenset(i for path in combo for i in path)
        if union not in seen:
            seen.add(union)
    minimal = [s for s in seen if is_minimal(net, message, s)]
    return tuple(SteinerTree(message, tuple(sorted(s)))
                 for s in sorted(minimal, key=lambda s: tuple(sorted(s))))


def min_cost_steiner_exact(net: Network, message: int, lengths) -> tuple[SteinerTree, Fraction]:
    """Exact min-cost tree (table scan over the enumerated list); ties break
    toward the earlier tree in deterministic order."""
    best = None
    best_cost = None
    for tree in enumerate_minimal_steiner_trees(net, message):
        cost = sum(Fraction(lengths[e]) for e in tree.edges)
        if best_cost is None or cost < best_cost:
            best, best_cost = tree, cost
    if best is None:
        raise ValueError(f"message {message} has no Steiner tree")
    return best, best_cost


def _shortest_path(net: Network, source: str, target: str, lengths) -> tuple[int, ...]:
    """Dijkstra with deterministic tie-breaking (lexicographic edge indices)."""
    out = out_edge_indices(net)
    dist: dict[str, Fraction] = {source: Fraction(0)}
    back: dict[str, int] = {}
    heap = [(Fraction(0), source)]
    done: set[str] = set()
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        for i in out[u]:
            v = net.edges[i].head
            nd = d + Fraction(lengths[i])
            if v not in dist or nd < dist[v] or (nd == dist[v] and i < back[v]):
                dist[v] = nd
                back[v] = i
                heapq.heappush(heap, (nd, v))
    if target not in dist:
        raise ValueError(f"no path from {source} to {target}")
    path = []
    node = target
    while node != source:
        i = back[node]
        path.append(i)
        node = net.edges[i].tail
    return tuple(reversed(path))


def min_cost_steiner_shortest_paths(net: Network, message: int, lengths) -> tuple[SteinerTree, Fraction]:
    """Union of per-receiver shortest paths, pruned to minimality.

    Cost is within a factor of the receiver count of the exact optimum
    (each shortest path costs no more than the optimal tree).
    """
    m = net.messages[message]
    union = set()
    for r in m.receivers:
        union.update(_shortest_path(net, m.source, r, lengths))
    for e in sorted(union):
        trimmed = frozenset(union) - {e}
        if connects(net, message, trimmed):
            union.discard(e)
    edges = tuple(sorted(union))
    cost = sum(Fraction(lengths[e]) for e in edges)
    return SteinerTree(message, edges), cost
