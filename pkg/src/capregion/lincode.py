"""Scalar-linear network codes over prime fields.

Decides, for a subset of messages marked by a 0/1 weight vector, whether the
network admits a scalar-linear code delivering every marked message to all
its receivers when edges carry a single field symbol.  The search assigns
global coding vectors to edges in topological order, pruning branches where
a receiver's attainable span can no longer contain a demanded unit vector.
Minimal active edge sets are enumerated by increasing size with superset
skipping, which also yields the exact min-cost oracle used by the
semi-linear packing engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from capregion.network import (
    Network,
    in_edge_indices,
    out_edge_indices,
    reachable_from,
    topological_order,
)

WeightVector = tuple[int, ...]


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    q: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise ValueError(f"field order {self.q} is not prime")


class FieldOps:
    """Arithmetic tables for GF(q), q prime."""

    def __init__(self, q: int):
        if not is_prime(q):
            raise ValueError(f"{q} is not prime")
        self.q = q
        self.inverse_table = [0] + [pow(a, q - 2, q) for a in range(1, q)]

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def neg(self, a: int) -> int:
        return (-a) % self.q

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.q

    def inverse(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inverse_table[a % self.q]


def field_ops(q: int) -> FieldOps:
    return FieldOps(q)


# -- small GF(q) linear algebra on tuples ------------------------------------

def _vec_add_scaled(u, v, c, q):
    return tuple((a + c * b) % q for a, b in zip(u, v))


def _row_reduce(vectors, q):
    """Return (basis rows in echelon form, pivot columns)."""
    basis: list[tuple[int, ...]] = []
    pivots: list[int] = []
    for vec in vectors:
        v = vec
        for b, p in zip(basis, pivots):
            if v[p]:
                v = _vec_add_scaled(v, b, (-v[p] * pow(b[p], q - 2, q)) % q, q)
        p = next((i for i, a in enumerate(v) if a), None)
        if p is not None:
            basis.append(v)
            pivots.append(p)
    return basis, pivots


def _in_span(target, basis, pivots, q):
    v = target
    for b, p in zip(basis, pivots):
        if v[p]:
            v = _vec_add_scaled(v, b, (-v[p] * pow(b[p], q - 2, q)) % q, q)
    return all(a == 0 for a in v)


def _span_elements(vectors, q, dim):
    """All distinct vectors in the span (deterministic order)."""
    basis, _ = _row_reduce(vectors, q)
    zero = tuple(0 for _ in range(dim))
    elems = [zero]
    seen = {zero}
    for b in basis:
        new = []
        for c in range(1, q):
            for e in elems:
                v = _vec_add_scaled(e, b, c, q)
                if v not in seen:
                    seen.add(v)
                    new.append(v)
        elems += new
    return sorted(seen)


def _solve_combination(inputs, target, q):
    """Coefficients expressing target as a combination of inputs, or None."""
    if not inputs:
        return None if any(target) else ()
    dim = len(target)
    cols = len(inputs)
    rows = [[inputs[j][i] for j in range(cols)] + [target[i]] for i in range(dim)]
    piv_cols: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, dim) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], q - 2, q)
        rows[r] = [(a * inv) % q for a in rows[r]]
        for i in range(dim):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % q for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, dim):
        if rows[i][cols]:
            return None
    coeffs = [0] * cols
    for i, c in enumerate(piv_cols):
        coeffs[c] = rows[i][cols]
    return tuple(coeffs)


# -- solutions ----------------------------------------------------------------

InputRef = tuple[str, object]  # ("m", message index) or ("e", edge index)


@dataclass(frozen=True)
class PartialScalarLinearSolution:
    """Witness code for one weight vector with unit edge capacities.

    ``edge_coefficients`` maps each active edge to (input list, coefficient
    list) over its tail's available inputs; ``decode_coefficients`` maps each
    (receiver, demanded message) pair to the same structure over the
    receiver's inputs.  Inputs are active in-edges and locally generated
    active messages, in canonical order.
    """

    weight: WeightVector
    active_edges: frozenset[int]
    edge_coefficients: tuple[tuple[int, tuple[InputRef, ...], tuple[int, ...]], ...]
    decode_coefficients: tuple[tuple[str, int, tuple[InputRef, ...], tuple[int, ...]], ...]

    def sort_key(self):
        return tuple(sorted(self.active_edges))


def _active_sources(net: Network, w: WeightVector) -> list[int]:
    return [i for i, wi in enumerate(w) if wi]


def _relevant_edges(net: Network, w: WeightVector) -> list[int]:
    """Edges on some active-source-to-active-receiver path; minimal active
    sets can only use these."""
    active = _active_sources(net, w)
    if not active:
        return []
    fwd: set[str] = set()
    for i in active:
        fwd |= reachable_from(net, net.messages[i].source)
    # backward reachability to any active receiver
    targets = {r for i in active for r in net.messages[i].receivers}
    incoming = in_edge_indices(net)
    back = set(targets)
    stack = list(targets)
    while stack:
        u = stack.pop()
        for e in incoming[u]:
            v = net.edges[e].tail
            if v not in back:
                back.add(v)
                stack.append(v)
    return [i for i, e in enumerate(net.edges) if e.tail in fwd and e.head in back]


def _search_code(net: Network, w: WeightVector, q: int,
                 allowed: frozenset[int]) -> dict[int, tuple[int, ...]] | None:
    """Find global coding vectors supported inside ``allowed`` satisfying all
    demands of active messages; None when impossible.  First solution in
    deterministic order (span elements sorted, zero first)."""
    active = _active_sources(net, w)
    k = len(w)
    zero = tuple(0 for _ in range(k))
    units = {i: tuple(1 if j == i else 0 for j in range(k)) for i in active}
    demands = [(x, j) for j in active for x in net.messages[j].receivers]
    if not demands:
        return {}

    order = topological_order(net)
    pos = {n: i for i, n in enumerate(order)}
    edge_order = sorted(allowed, key=lambda e: (pos[net.edges[e].tail], e))
    incoming = in_edge_indices(net)
    seq = {e: i for i, e in enumerate(edge_order)}

    # messages that can still reach an edge's tail inside the allowed set:
    # upper bound on what an unassigned edge may ever carry.
    reach_msgs: dict[int, list[tuple[int, ...]]] = {}
    for e in edge_order:
        tail = net.edges[e].tail
        reach_msgs[e] = [units[j] for j in active
                         if tail in reachable_from(net, net.messages[j].source, allowed)]

    gens: dict[str, list[int]] = {n: [] for n in net.nodes}
    for j in active:
        gens[net.messages[j].source].append(j)

    assign: dict[int, tuple[int, ...]] = {}

    def feasible(position: int) -> bool:
        # exact check for completed demands; span over-approximation otherwise
        for x, j in demands:
            vecs = [units[jj] for jj in gens[x]]
            pending = []
            for e in incoming[x]:
                if e not in allowed:
                    continue
                if seq[e] < position:
                    vecs.append(assign[e])
                else:
                    pending += reach_msgs[e]
            basis, pivots = _row_reduce(vecs + pending, q)
            if not _in_span(units[j], basis, pivots, q):
                return False
        return True

    def dfs(position: int) -> bool:
        if not feasible(position):
            return False
        if position == len(edge_order):
            return True
        e = edge_order[position]
        tail = net.edges[e].tail
        avail = [units[j] for j in gens[tail]]
        avail += [assign[e2] for e2 in incoming[tail] if e2 in allowed]
        for vec in _span_elements(avail, q, k):
            assign[e] = vec
            if dfs(position + 1):
                return True
        del assign[e]
        return False

    if dfs(0):
        return dict(assign)
    return None


def _necessary_reachability(net: Network, w: WeightVector,
                            allowed: frozenset[int]) -> bool:
    for j in _active_sources(net, w):
        reach = reachable_from(net, net.messages[j].source, allowed)
        if not all(r in reach for r in net.messages[j].receivers):
            return False
    return True


def _witness_from_vectors(net: Network, w: WeightVector, q: int,
                          vectors: dict[int, tuple[int, ...]]) -> PartialScalarLinearSolution:
    """Recover local edge/decoding coefficients from global coding vectors."""
    active_edges = frozenset(e for e, v in vectors.items() if any(v))
    incoming = in_edge_indices(net)
    active = _active_sources(net, w)
    k = len(w)
    units = {i: tuple(1 if j == i else 0 for j in range(k)) for i in active}
    gens: dict[str, list[int]] = {n: [] for n in net.nodes}
    for j in active:
        gens[net.messages[j].source].append(j)

    def inputs_at(node: str) -> tuple[list[InputRef], list[tuple[int, ...]]]:
        refs: list[InputRef] = [("m", j) for j in gens[node]]
        vecs = [units[j] for j in gens[node]]
        for e in incoming[node]:
            if e in active_edges:
                refs.append(("e", e))
                vecs.append(vectors[e])
        return refs, vecs

    edge_rows = []
    for e in sorted(active_edges):
        refs, vecs = inputs_at(net.edges[e].tail)
        coeffs = _solve_combination(vecs, vectors[e], q)
        assert coeffs is not None, "active edge vector must lie in its tail span"
        edge_rows.append((e, tuple(refs), coeffs))

    decode_rows = []
    for j in active:
        for x in net.messages[j].receivers:
            refs, vecs = inputs_at(x)
            coeffs = _solve_combination(vecs, units[j], q)
            assert coeffs is not None, "witness must decode every demand"
            decode_rows.append((x, j, tuple(refs), coeffs))

    return PartialScalarLinearSolution(w, active_edges, tuple(edge_rows),
                                       tuple(decode_rows))


def verify_partial_solution(net: Network, sol: PartialScalarLinearSolution,
                            field: FieldSpec) -> bool:
    """Independent audit: re-propagate global coding vectors in topological
    order from the stored local coefficients and check each demanded message
    decodes to exactly its unit vector."""
    q = field.q
    k = len(sol.weight)
    active = [i for i, wi in enumerate(sol.weight) if wi]
    units = {i: tuple(1 if j == i else 0 for j in range(k)) for i in active}
    order = topological_order(net)
    pos = {n: i for i, n in enumerate(order)}
    edge_coeff = {e: (refs, coeffs) for e, refs, coeffs in sol.edge_coefficients}
    if set(edge_coeff) != set(sol.active_edges):
        return False
    state: dict[int, tuple[int, ...]] = {}

    def resolve(ref: InputRef, node: str) -> tuple[int, ...] | None:
        kind, idx = ref
        if kind == "m":
            m = net.messages[idx]
            if m.source != node or not sol.weight[idx]:
                return None
            return units[idx]
        e = idx
        if e not in state or net.edges[e].head != node:
            return None
        return state[e]

    for e in sorted(sol.active_edges, key=lambda e: (pos[net.edges[e].tail], e)):
        refs, coeffs = edge_coeff[e]
        vec = tuple(0 for _ in range(k))
        for ref, c in zip(refs, coeffs):
            src = resolve(ref, net.edges[e].tail)
            if src is None:
                return False
            vec = _vec_add_scaled(vec, src, c, q)
        state[e] = vec

    decoded = set()
    for x, j, refs, coeffs in sol.decode_coefficients:
        vec = tuple(0 for _ in range(k))
        for ref, c in zip(refs, coeffs):
            src = resolve(ref, x)
            if src is None:
                return False
            vec = _vec_add_scaled(vec, src, c, q)
        if vec != units.get(j):
            return False
        decoded.add((x, j))
    wanted = {(x, j) for j in active for x in net.messages[j].receivers}
    return decoded == wanted


def is_scalar_linear_solvable(net: Network, w: WeightVector,
                              field: FieldSpec) -> PartialScalarLinearSolution | None:
    """Exact solvability of the weight vector over GF(q); returns a witness
    with a minimal active edge set, or None."""
    if len(w) != net.n_messages:
        raise ValueError("weight vector dimension mismatch")
    q = field.q
    universe = frozenset(_relevant_edges(net, w))
    if not _necessary_reachability(net, w, universe):
        return None
    vectors = _search_code(net, w, q, universe)
    if vectors is None:
        return None
    # shrink to a minimal active set (greedy, deterministic)
    support = frozenset(e for e, v in vectors.items() if any(v))
    for e in sorted(support):
        if e not in support:
            continue
        candidate = support - {e}
        if not _necessary_reachability(net, w, candidate):
            continue
        got = _search_code(net, w, q, candidate)
        if got is not None:
            support = frozenset(e2 for e2, v in got.items() if any(v))
            vectors = got
    vectors = {e: v for e, v in vectors.items() if any(v)}
    return _witness_from_vectors(net, w, q, vectors)


@lru_cache(maxsize=None)
def enumerate_weight_vectors(net: Network, field: FieldSpec) -> tuple[WeightVector, ...]:
    """All weight vectors admitting a scalar-linear solution (downward closed;
    contains the zero vector, and every unit vector on validated networks)."""
    out = []
    for bits in product((0, 1), repeat=net.n_messages):
        if is_scalar_linear_solvable(net, bits, field) is not None:
            out.append(bits)
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_minimal_partial_solutions(
        net: Network, w: WeightVector,
        field: FieldSpec) -> tuple[PartialScalarLinearSolution, ...]:
    """All minimal active edge sets solving ``w``, each with a witness.

    Subsets of the relevant edge universe are scanned in increasing size;
    a set solvable here with no solvable strict subset (guaranteed by the
    size order plus superset skipping) has full support, so each hit is one
    minimal active set.
    """
    q = field.q
    active = _active_sources(net, w)
    if not active:
        return (PartialScalarLinearSolution(w, frozenset(), (), ()),)
    universe = sorted(_relevant_edges(net, w))
    found: list[frozenset[int]] = []
    witnesses: list[PartialScalarLinearSolution] = []
    for size in range(len(universe) + 1):
        for combo in combinations(universe, size):
            s = frozenset(combo)
            if any(f <= s for f in found):
                continue
            if not _necessary_reachability(net, w, s):
                continue
            vectors = _search_code(net, w, q, s)
            if vectors is None:
                continue
            support = frozenset(e for e, v in vectors.items() if any(v))
            assert support == s, "smaller support would have been found earlier"
            found.append(s)
            witnesses.append(_witness_from_vectors(net, w, q, vectors))
    if not witnesses:
        raise ValueError(f"weight vector {w} is not solvable over GF({q})")
    return tuple(sorted(witnesses, key=lambda sol: sol.sort_key()))


def min_cost_scalar_linear(net: Network, w: WeightVector, lengths,
                           field: FieldSpec) -> tuple[PartialScalarLinearSolution, Fraction]:
    """Exact min-cost partial solution for ``w`` under edge lengths (scan of
    the cached minimal-solution list; ties break by deterministic order)."""
    best = None
    best_cost = None
    for sol in enumerate_minimal_partial_solutions(net, w, field):
        cost = sum(Fraction(lengths[e]) for e in sol.active_edges)
        if best_cost is None or cost < best_cost:
            best, best_cost = sol, cost
    return best, best_cost if best_cost is not None else Fraction(0)
