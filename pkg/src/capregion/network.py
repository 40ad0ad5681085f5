"""Capacitated network model: directed acyclic multigraphs with messages.

A network couples a directed multigraph with integer edge capacities to a set
of messages, each generated at a single source node and demanded by one or
more receiver nodes (multiple multicast form).  Values are immutable after
construction; structural admissibility beyond what the file format can
express (acyclicity, reachability, non-degeneracy) is checked separately by
:func:`validate_network` so that defective inputs can be reported rather than
rejected at parse time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache


class NetworkParseError(ValueError):
    """Raised on malformed network files; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Edge:
    tail: str
    head: str
    capacity: int


@dataclass(frozen=True)
class Message:
    name: str
    source: str
    receivers: tuple[str, ...]


@dataclass(frozen=True)
class Network:
    """Immutable capacitated network.

    Edges and messages are identified by their position in the tuples below;
    parallel edges are therefore distinct.  ``alphabet_size`` is metadata
    constraining admissible field sizes (any field used for coding must have
    at least this many elements).
    """

    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    messages: tuple[Message, ...]
    alphabet_size: int = 2

    def node_index(self, node: str) -> int:
        return self.nodes.index(node)

    @property
    def n_messages(self) -> int:
        return len(self.messages)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class RateWitness:
    """Integer witness (k, n) for the rate vector k_i / n."""

    k: tuple[int, ...]
    n: int

    def rates(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(ki, self.n) for ki in self.k)


def rate_witness(rates: tuple[Fraction, ...]) -> RateWitness:
    """Clear the denominators of a rational rate vector."""
    rates = tuple(Fraction(r) for r in rates)
    n = 1
    for r in rates:
        n = n * r.denominator // _gcd(n, r.denominator)
    return RateWitness(tuple(int(r * n) for r in rates), n)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def parse_network(text: str) -> Network:
    """Parse the line-oriented network file format.

    Directives: ``node ID``, ``edge TAIL HEAD CAPACITY``,
    ``message ID SOURCE RECV[,RECV...]``, ``alphabet SIZE``; ``#`` starts a
    comment line.  Raises :class:`NetworkParseError` with the offending line.
    """
    nodes: list[str] = []
    edges: list[Edge] = []
    messages: list[Message] = []
    alphabet: int | None = None
    seen_nodes: set[str] = set()
    seen_messages: set[str] = set()

    def fail(msg: str, ln: int):
        raise NetworkParseError(msg, ln)

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "node":
            if len(parts) != 2:
                fail("expected 'node ID'", ln)
            name = parts[1]
            if not name.isalnum():
                fail(f"node id {name!r} is not alphanumeric", ln)
            if name in seen_nodes:
                fail(f"duplicate node id {name!r}", ln)
            seen_nodes.add(name)
            nodes.append(name)
        elif kind == "edge":
            if len(parts) != 4:
                fail("expected 'edge TAIL HEAD CAPACITY'", ln)
            tail, head, cap_text = parts[1], parts[2], parts[3]
            for endpoint in (tail, head):
                if endpoint not in seen_nodes:
                    fail(f"unknown node {endpoint!r}", ln)
            if not cap_text.isdigit() or int(cap_text) < 1:
                fail(f"capacity must be a positive integer, got {cap_text!r}", ln)
            edges.append(Edge(tail, head, int(cap_text)))
        elif kind == "message":
            if len(parts) != 4:
                fail("expected 'message ID SOURCE RECV[,RECV...]'", ln)
            name, source, recv_text = parts[1], parts[2], parts[3]
            if name in seen_messages:
                fail(f"duplicate message id {name!r}", ln)
            if source not in seen_nodes:
                fail(f"unknown node {source!r}", ln)
            receivers = tuple(recv_text.split(","))
            if not all(receivers):
                fail("empty receiver in list", ln)
            for r in receivers:
                if r not in seen_nodes:
                    fail(f"unknown node {r!r}", ln)
            seen_messages.add(name)
            messages.append(Message(name, source, receivers))
        elif kind == "alphabet":
            if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 2:
                fail("expected 'alphabet SIZE' with SIZE >= 2", ln)
            if alphabet is not None:
                fail("duplicate alphabet directive", ln)
            alphabet = int(parts[1])
        else:
            fail(f"unknown directive {kind!r}", ln)

    return Network(tuple(nodes), tuple(edges), tuple(messages),
                   alphabet_size=alphabet if alphabet is not None else 2)


def serialize_network(net: Network) -> str:
    """Emit the file format deterministically (index order). Round-trips."""
    out = [f"node {n}" for n in net.nodes]
    out += [f"edge {e.tail} {e.head} {e.capacity}" for e in net.edges]
    out += [f"message {m.name} {m.source} {','.join(m.receivers)}"
            for m in net.messages]
    out.append(f"alphabet {net.alphabet_size}")
    return "\n".join(out) + "\n"


@lru_cache(maxsize=None)
def out_edge_indices(net: Network) -> dict[str, tuple[int, ...]]:
    by_node: dict[str, list[int]] = {n: [] for n in net.nodes}
    for i, e in enumerate(net.edges):
        by_node[e.tail].append(i)
    return {n: tuple(v) for n, v in by_node.items()}


@lru_cache(maxsize=None)
def in_edge_indices(net: Network) -> dict[str, tuple[int, ...]]:
    by_node: dict[str, list[int]] = {n: [] for n in net.nodes}
    for i, e in enumerate(net.edges):
        by_node[e.head].append(i)
    return {n: tuple(v) for n, v in by_node.items()}


def reachable_from(net: Network, start: str,
                   edge_subset: frozenset[int] | None = None) -> set[str]:
    """Nodes reachable from ``start`` along directed edges (optionally only
    edges whose index lies in ``edge_subset``)."""
    out = out_edge_indices(net)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for i in out[u]:
            if edge_subset is not None and i not in edge_subset:
                continue
            v = net.edges[i].head
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def topological_order(net: Network) -> list[str]:
    """Kahn's algorithm; deterministic (node index order). Raises on cycles."""
    indeg = {n: 0 for n in net.nodes}
    for e in net.edges:
        indeg[e.head] += 1
    ready = [n for n in net.nodes if indeg[n] == 0]
    order: list[str] = []
    out = out_edge_indices(net)
    while ready:
        u = ready.pop(0)
        order.append(u)
        for i in out[u]:
            v = net.edges[i].head
            indeg[v] -= 1
            if indeg[v] == 0:
                ready.append(v)
    if len(order) != len(net.nodes):
        raise ValueError("cycle detected: network is not acyclic")
    return order


def validate_network(net: Network) -> ValidationReport:
    """Check admissibility for region computations.

    Reported violations: cycles, a message demanded where it is generated
    (degeneracy), and demands with no directed path from the message's source
    to the receiver.  An empty report means the network is admissible.
    """
    violations: list[str] = []
    try:
        topological_order(net)
    except ValueError:
        violations.append("cycle detected: network is not acyclic")
    for m in net.messages:
        if m.source in m.receivers:
            violations.append(
                f"degenerate: message {m.name} generated and demanded at {m.source}")
        reach = reachable_from(net, m.source)
        for r in m.receivers:
            if r != m.source and r not in reach:
                violations.append(f"{m.name} unreachable at {r}")
    return ValidationReport(tuple(violations))


def rate_upper_bounds(net: Network) -> tuple[Fraction, ...]:
    """Per-message rate bound: total capacity leaving the message's source.

    No solution can push more than this many symbols of the message per edge
    symbol, so every achievable rate vector is dominated coordinatewise.
    """
    out = out_edge_indices(net)
    bounds = []
    for m in net.messages:
        bounds.append(Fraction(sum(net.edges[i].capacity for i in out[m.source])))
    return tuple(bounds)
