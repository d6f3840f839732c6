"""Perfect matchings, 2-factors, and minimum parity subgraphs.

Two backends compute a minimum parity subgraph (a spanning subgraph with all
degrees odd, i.e. 1 or 3 in a cubic host):

``oracle``
    exhaustive include/exclude search over edge subsets with parity pruning;
    refuses graphs with more than 24 edges.
``matching``
    minimum T-join with T = V(G): shortest-path distances between all
    vertices, a minimum-weight perfect matching on that metric closure, and the
    symmetric difference of the matched paths. Polynomial.

Both break ties the same way (lexicographically smallest sorted edge-id list),
so on any graph they return the same edge set.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Optional

import networkx as nx

from .generators import GADGET_INNER_MATCHING, GADGETS
from .graph import (
    Multigraph,
    from_mask,
    is_even_mask,
    is_parity_mask,
    is_perfect_matching_mask,
    iter_bits,
    popcount,
    require_cubic,
    to_mask,
)
from .structure import AttachResult, ExpansionResult, expand_vertices

ORACLE_MAX_EDGES = 24


@dataclass(frozen=True)
class Matching:
    edges: frozenset[int]

    @property
    def mask(self) -> int:
        return to_mask(self.edges)

    def is_matching(self, g: Multigraph) -> bool:
        return all(popcount(s & self.mask) <= 1 for s in g.star_masks)

    def is_perfect(self, g: Multigraph) -> bool:
        return is_perfect_matching_mask(g, self.mask)


@dataclass(frozen=True)
class ParitySubgraph:
    edges: frozenset[int]
    v1: frozenset[int]
    v3: frozenset[int]

    @classmethod
    def from_edges(cls, g: Multigraph, edges) -> "ParitySubgraph":
        edges = frozenset(edges)
        deg = g.degree_in(edges)
        bad = [v for v, d in enumerate(deg) if d % 2 == 0]
        if bad:
            raise ValueError(f"vertex {bad[0]} has even degree {deg[bad[0]]} in the edge set")
        return cls(
            edges,
            frozenset(v for v, d in enumerate(deg) if d == 1),
            frozenset(v for v, d in enumerate(deg) if d == 3),
        )

    @property
    def mask(self) -> int:
        return to_mask(self.edges)

    def complement(self, g: Multigraph) -> "EvenSubgraph":
        return EvenSubgraph(from_mask(g.full_mask & ~self.mask))


@dataclass(frozen=True)
class EvenSubgraph:
    edges: frozenset[int]

    @property
    def mask(self) -> int:
        return to_mask(self.edges)

    def is_even(self, g: Multigraph) -> bool:
        return is_even_mask(g, self.mask)

    def __len__(self):
        return len(self.edges)


# -- perfect matchings ---------------------------------------------------------

def _max_matching_mask(g: Multigraph, allowed: int) -> int:
    """Maximum-cardinality matching (blossom) using only edges in ``allowed``."""
    simple = nx.Graph()
    simple.add_nodes_from(range(g.n))
    for e in iter_bits(allowed):
        u, v = g.edges[e]
        if not simple.has_edge(u, v):
            simple.add_edge(u, v, id=e)
    pairs = nx.max_weight_matching(simple, maxcardinality=True)
    return to_mask(simple.edges[u, v]["id"] for u, v in pairs)


def find_perfect_matching(g: Multigraph, avoid=()) -> Optional[Matching]:
    if g.n % 2:
        return None
    allowed = g.full_mask & ~to_mask(avoid)
    mask = _max_matching_mask(g, allowed)
    if popcount(mask) * 2 != g.n:
        return None
    return Matching(from_mask(mask))


def matching_avoiding(g: Multigraph, e1: int, e2: int) -> Optional[Matching]:
    """A perfect matching containing neither ``e1`` nor ``e2``."""
    return find_perfect_matching(g, avoid=(e1, e2))


def perfect_matching_masks(g: Multigraph, limit: Optional[int] = None, forbidden: int = 0) -> list[int]:
    """Backtracking enumeration; branches on the lowest unmatched vertex."""
    out: list[int] = []
    if g.n % 2:
        return out
    n = g.n
    inc = g.incidence
    edges = g.edges
    all_vertices = (1 << n) - 1

    def rec(covered: int, chosen: int) -> bool:
        if covered == all_vertices:
            out.append(chosen)
            return limit is not None and len(out) >= limit
        free = ~covered & all_vertices
        v = (free & -free).bit_length() - 1
        for e in inc[v]:
            if (forbidden >> e) & 1:
                continue
            a, b = edges[e]
            w = b if a == v else a
            if (covered >> w) & 1:
                continue
            if rec(covered | (1 << v) | (1 << w), chosen | (1 << e)):
                return True
        return False

    rec(0, 0)
    return out


def enumerate_perfect_matchings(g: Multigraph, limit: Optional[int] = None) -> list[Matching]:
    """All perfect matchings, or the first ``limit`` of them."""
    return [Matching(from_mask(m)) for m in perfect_matching_masks(g, limit)]


def two_factor(g: Multigraph) -> Optional[frozenset[int]]:
    """A spanning 2-regular edge set.

    ``g`` must be cubic, or cubic except for a single degree-2 vertex. In the
    second case a copy of W is hung on the degree-2 vertex, a 2-factor of that
    cubic closure is found, and its restriction to ``g`` is returned.
    """
    degs = g.degrees()
    low = [v for v, d in enumerate(degs) if d != 3]
    if not low:
        pm = find_perfect_matching(g)
        return None if pm is None else from_mask(g.full_mask & ~pm.mask)
    if len(low) != 1 or degs[low[0]] != 2:
        raise ValueError("two_factor expects a cubic graph or one with a single degree-2 vertex")
    v = low[0]
    w = GADGETS["W"]
    base = g.n
    closure_edges = list(g.edges) + [(v, base)] + [(a + base, b + base) for a, b in w.edges]
    closure = Multigraph(g.n + w.n, tuple(closure_edges))
    pm = find_perfect_matching(closure)
    if pm is None:
        return None
    return from_mask(g.full_mask & ~pm.mask)


# -- minimum parity subgraphs ----------------------------------------------------

def _oracle_min_parity(g: Multigraph) -> int:
    m = g.m
    if m > ORACLE_MAX_EDGES:
        raise ValueError(f"oracle backend is capped at {ORACLE_MAX_EDGES} edges (2^{m} subsets requested)")
    n = g.n
    last = [max(ids) if ids else -1 for ids in g.incidence]
    closing: list[list[int]] = [[] for _ in range(m)]
    for v in range(n):
        if last[v] >= 0:
            closing[last[v]].append(v)
    if any(last[v] < 0 for v in range(n)):
        return -1
    edges = g.edges
    deg = [0] * n
    best = [m + 1, -1]

    def rec(i: int, size: int, mask: int, zero: int):
        if size + (zero + 1) // 2 >= best[0]:
            return
        if i == m:
            best[0], best[1] = size, mask
            return
        u, v = edges[i]
        # include first, so the first optimum found is the lexicographically smallest
        for take in (1, 0):
            if take:
                z = zero - (deg[u] == 0) - (deg[v] == 0)
                deg[u] += 1
                deg[v] += 1
            else:
                z = zero
            if all(deg[x] % 2 == 1 for x in closing[i]):
                rec(i + 1, size + take, mask | (take << i), z)
            if take:
                deg[u] -= 1
                deg[v] -= 1

    rec(0, 0, 0, n)
    return best[1]


def _bfs_tree(g: Multigraph, allowed: int, src: int) -> tuple[list[int], list[int]]:
    dist = [-1] * g.n
    via = [-1] * g.n
    dist[src] = 0
    q = deque([src])
    while q:
        x = q.popleft()
        for e in g.incidence[x]:
            if not (allowed >> e) & 1:
                continue
            y = g.other(e, x)
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                via[y] = e
                q.append(y)
    return dist, via


def min_t_join(g: Multigraph, terminals, allowed: Optional[int] = None) -> Optional[int]:
    """Minimum T-join (unit weights) restricted to ``allowed`` edges, as a mask.

    Returns None when no T-join exists (some component holds an odd number of
    terminals).
    """
    if allowed is None:
        allowed = g.full_mask
    T = sorted(terminals)
    if not T:
        return 0
    if len(T) % 2:
        return None
    trees = {t: _bfs_tree(g, allowed, t) for t in T}
    closure = nx.Graph()
    closure.add_nodes_from(T)
    for i, s in enumerate(T):
        dist = trees[s][0]
        for t in T[i + 1:]:
            if dist[t] >= 0:
                closure.add_edge(s, t, weight=dist[t])
    pairs = nx.min_weight_matching(closure)
    if 2 * len(pairs) != len(T):
        return None
    join = 0
    for s, t in pairs:
        via = trees[s][1]
        x = t
        while x != s:
            e = via[x]
            join ^= 1 << e
            x = g.other(e, x)
    return join


def _matching_min_parity(g: Multigraph) -> int:
    full = g.full_mask
    base = min_t_join(g, range(g.n), full)
    if base is None:
        return -1
    target = popcount(base)
    # lexicographic tie-break: keep each edge when an optimum containing it survives
    chosen = 0
    allowed = full
    odd = set(range(g.n))
    for e in range(g.m):
        u, v = g.edges[e]
        rest = allowed & ~(1 << e)
        trial_odd = odd ^ {u, v}
        rest_join = min_t_join(g, trial_odd, rest)
        if rest_join is not None and popcount(chosen) + 1 + popcount(rest_join) == target:
            chosen |= 1 << e
            odd = trial_odd
        allowed = rest
    assert popcount(chosen) == target and is_parity_mask(g, chosen)
    return chosen


def min_parity_subgraph(g: Multigraph, backend: str = "matching") -> ParitySubgraph:
    """A minimum parity subgraph J (ties: lexicographically smallest edge ids)."""
    require_cubic(g)
    if backend == "oracle":
        mask = _oracle_min_parity(g)
    elif backend == "matching":
        mask = _matching_min_parity(g)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    if mask < 0:
        raise ValueError("graph has no parity subgraph (a component has odd order)")
    return ParitySubgraph.from_edges(g, iter_bits(mask))


def max_even_subgraph(g: Multigraph, backend: str = "matching") -> EvenSubgraph:
    """The complement of ``min_parity_subgraph``; its size is ell(G)."""
    return min_parity_subgraph(g, backend).complement(g)


def lift_parity_subgraph(g: Multigraph, j: ParitySubgraph) -> tuple[ExpansionResult, Matching]:
    """Expand V3(J); J (same edge ids) is then a perfect matching of G_U."""
    exp = expand_vertices(g, j.v3)
    lifted = Matching(frozenset(exp.edge_lift[e] for e in j.edges))
    if not lifted.is_perfect(exp.graph):
        raise AssertionError("lifted parity subgraph is not a perfect matching")
    return exp, lifted


class Transfer(NamedTuple):
    u: frozenset[int]
    matching: Matching
    expansion: ExpansionResult


def transfer_matching(g: Multigraph, attach: AttachResult, m: Matching) -> Transfer:
    """Carry a perfect matching of G to a perfect matching of H_U.

    U is the set of roots w_e over e in E0 ∩ M. Edges outside E0 keep their
    membership; every gadget contributes its bridge plus an inner perfect
    matching; a matched E0 edge contributes both of its halves, which meet
    distinct corners of the triangle at w_e.
    """
    if not m.is_perfect(g):
        raise ValueError("m is not a perfect matching of g")
    e0 = attach.subdivided
    inner = GADGET_INNER_MATCHING[attach.gadget]
    U = frozenset(attach.root_of[e].root for e in e0 if e in m.edges)
    exp = expand_vertices(attach.graph, U)
    chosen = set()
    for e in g.edge_ids:
        if e not in e0:
            if e in m.edges:
                chosen.add(e)
            continue
        att = attach.root_of[e]
        chosen.add(att.bridge)
        chosen.update(att.edges[i] for i in inner)
        if e in m.edges:
            chosen.update((e, att.split_edge))
    n = Matching(frozenset(exp.edge_lift[e] for e in chosen))
    if not n.is_perfect(exp.graph):
        raise AssertionError("transferred matching is not perfect")
    return Transfer(U, n, exp)
