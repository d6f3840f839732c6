"""Brute-force reference computations, deliberately naive and independent of the package search code."""

from itertools import combinations, combinations_with_replacement


def degrees_of(g, edge_ids):
    deg = [0] * g.n
    for e in edge_ids:
        u, v = g.edges[e]
        deg[u] += 1
        deg[v] += 1
    return deg


def all_edge_subsets(g):
    for r in range(g.m + 1):
        yield from combinations(range(g.m), r)


def even_subgraphs(g):
    return [frozenset(s) for s in all_edge_subsets(g) if all(d % 2 == 0 for d in degrees_of(g, s))]


def perfect_matchings(g):
    if g.n % 2:
        return []
    return [frozenset(s) for s in combinations(range(g.m), g.n // 2) if all(d == 1 for d in degrees_of(g, s))]


def min_parity_size(g):
    """Smallest edge set whose degrees are all odd."""
    for r in range(g.m + 1):
        for s in combinations(range(g.m), r):
            if all(d % 2 == 1 for d in degrees_of(g, s)):
                return r
    return None


def shortest_cover(g, max_members=4):
    """Shortest cover of E(g) by at most max_members nonempty even subgraphs."""
    evens = [s for s in even_subgraphs(g) if s]
    full = frozenset(range(g.m))
    best = None
    for k in range(1, max_members + 1):
        for combo in combinations_with_replacement(range(len(evens)), k):
            members = [evens[i] for i in combo]
            if frozenset().union(*members) == full:
                length = sum(len(s) for s in members)
                if best is None or length < best:
                    best = length
    return best


def has_four_pm_cover(g):
    pms = perfect_matchings(g)
    full = frozenset(range(g.m))
    return any(frozenset().union(*c) == full for c in combinations_with_replacement(pms, 4))


def is_bridge(g, e):
    """Connectivity after deleting e, by plain graph search."""
    adj = {v: [] for v in range(g.n)}
    for i, (u, v) in enumerate(g.edges):
        if i != e:
            adj[u].append(v)
            adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) < g.n


def t_by_expansion(g, expand):
    """Smallest |U| such that the expansion at U has a perfect matching."""
    for k in range(g.n + 1):
        for u in combinations(range(g.n), k):
            if perfect_matchings(expand(g, set(u)).graph):
                return k
    return None
