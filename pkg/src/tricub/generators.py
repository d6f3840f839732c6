"""Named graphs, degree-1/3 tree families, and random/exhaustive cubic corpora.

Fixed labelings (also frozen in ``data/catalog.json``):

* ``theta``  -- 2 vertices, the edge 0-1 three times.
* ``W``      -- vertex 0 has degree 2; edges 0-1, 0-2, 1-2, 1-2.
* ``Wprime`` -- vertex 0 has degree 2 and subdivides the 1-2 edge of the K4
  on {1, 2, 3, 4}; edges 0-1, 0-2, 1-3, 1-4, 2-3, 2-4, 3-4.
* ``K4``, ``K33`` (parts {0,1,2} and {3,4,5}), ``prism`` (triangles 0-1-2 and
  3-4-5 joined by i-(i+3)).
* ``P10``    -- outer 5-cycle 0..4, spokes i-(i+5), inner pentagram
  (5+i)-(5+(i+2) mod 5), in that edge order.
* ``P12``    -- P10 with vertex 0 expanded to a triangle.
* ``S10``, ``S16`` -- the claw K_{1,3} (center 0, leaves 1, 2, 3) with every
  leaf turned into a copy of W, resp. W'.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .graph import Multigraph

GADGETS = {
    "W": Multigraph(3, ((0, 1), (0, 2), (1, 2), (1, 2)), "W"),
    "Wprime": Multigraph(5, ((0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)), "Wprime"),
}
# a perfect matching of the gadget minus its attachment vertex 0
GADGET_INNER_MATCHING = {"W": (2,), "Wprime": (2, 5)}


def gadget(name: str) -> Multigraph:
    try:
        return GADGETS[name]
    except KeyError:
        raise ValueError(f"unknown gadget {name!r}; expected 'W' or 'Wprime'") from None


@dataclass(frozen=True)
class DegreeTree:
    """A tree whose vertices all have degree 1 or 3."""

    tree: Multigraph

    def __post_init__(self):
        t = self.tree
        if t.n < 2:
            raise ValueError("a degree-1/3 tree needs at least 2 vertices")
        if t.m != t.n - 1 or not t.is_connected():
            raise ValueError("not a tree")
        bad = [v for v in range(t.n) if t.degree(v) not in (1, 3)]
        if bad:
            raise ValueError(f"vertex {bad[0]} has degree {t.degree(bad[0])}, expected 1 or 3")

    @property
    def n(self) -> int:
        return self.tree.n

    @property
    def leaves(self) -> list[int]:
        return [v for v in range(self.tree.n) if self.tree.degree(v) == 1]

    @property
    def k1(self) -> int:
        return len(self.leaves)

    @property
    def k3(self) -> int:
        return self.tree.n - self.k1


def caterpillar_tree(n: int) -> DegreeTree:
    """Degree-1/3 tree on ``n`` vertices: a spine of n/2 - 1 branch vertices."""
    if n < 2 or n % 2:
        raise ValueError("a degree-1/3 tree has an even number (>= 2) of vertices")
    if n == 2:
        return DegreeTree(Multigraph(2, ((0, 1),), "K2"))
    spine = n // 2 - 1
    edges = [(i, i + 1) for i in range(spine - 1)]
    nxt = spine
    for i in range(spine):
        need = 3 - (i > 0) - (i < spine - 1)
        for _ in range(need):
            edges.append((i, nxt))
            nxt += 1
    return DegreeTree(Multigraph(n, tuple(edges), f"caterpillar{n}"))


def claw() -> DegreeTree:
    return DegreeTree(Multigraph(4, ((0, 1), (0, 2), (0, 3)), "K13"))


def generate_from_tree(tree: DegreeTree, gadget_name: str) -> Multigraph:
    """Turn every leaf of ``tree`` into a copy of the gadget.

    The leaf is identified with the gadget's degree-2 vertex, so the result is
    cubic with 2n+2 (W) or 3n+4 (W') vertices. Tree vertices keep their labels.
    """
    gad = gadget(gadget_name)
    t = tree.tree
    edges = list(t.edges)
    n = t.n
    for leaf in tree.leaves:
        label = {0: leaf}
        for x in range(1, gad.n):
            label[x] = n
            n += 1
        edges.extend((label[a], label[b]) for a, b in gad.edges)
    return Multigraph(n, tuple(edges))


def _petersen() -> Multigraph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Multigraph(10, tuple(edges))


CATALOG_NAMES = ("W", "Wprime", "K4", "K33", "prism", "P10", "P12", "S10", "S16", "theta")


def generate(name: str) -> Multigraph:
    if name in GADGETS:
        g = GADGETS[name]
    elif name == "theta":
        g = Multigraph(2, ((0, 1), (0, 1), (0, 1)))
    elif name == "K4":
        g = Multigraph(4, tuple(combinations(range(4), 2)))
    elif name == "K33":
        g = Multigraph(6, tuple((i, j) for i in range(3) for j in range(3, 6)))
    elif name == "prism":
        g = Multigraph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)))
    elif name == "P10":
        g = _petersen()
    elif name == "P12":
        from .structure import expand_vertices

        g = expand_vertices(_petersen(), {0}).graph
    elif name == "S10":
        g = generate_from_tree(claw(), "W")
    elif name == "S16":
        g = generate_from_tree(claw(), "Wprime")
    else:
        raise ValueError(f"unknown graph name {name!r}; expected one of {', '.join(CATALOG_NAMES)}")
    return g.with_name(name)


def random_cubic(n: int, simple: bool = False, seed: int = 0, max_tries: int = 100000) -> Multigraph:
    """Connected cubic multigraph from the pairing model, loops rejected.

    With ``simple=True`` parallel edges are rejected too. The same seed always
    gives the same graph; rejected draws just continue the seeded stream.
    """
    if n % 2:
        raise ValueError(f"cubic graphs have even order, got {n}")
    if n < 2 or (simple and n < 4):
        raise ValueError(f"order {n} too small")
    rng = random.Random(seed)
    points = [v for v in range(n) for _ in range(3)]
    for _ in range(max_tries):
        rng.shuffle(points)
        edges = [(points[i], points[i + 1]) for i in range(0, 3 * n, 2)]
        if any(u == v for u, v in edges):
            continue
        if simple and len({(min(u, v), max(u, v)) for u, v in edges}) != len(edges):
            continue
        edges = sorted((min(u, v), max(u, v)) for u, v in edges)
        g = Multigraph(n, tuple(edges))
        if g.is_connected():
            return g
    raise RuntimeError(f"no connected cubic graph drawn in {max_tries} attempts")


def simple_cubic_graphs(n: int) -> list[Multigraph]:
    """All connected simple cubic graphs on ``n`` vertices, one per isomorphism class.

    Brute force: fill vertices in order, only ever opening the lowest untouched
    vertex, then deduplicate with an isomorphism test.
    """
    import networkx as nx

    if n % 2 or n < 4:
        return []
    found: list[tuple[str, object, Multigraph]] = []
    adj = [set() for _ in range(n)]

    def emit():
        edges = tuple(sorted((u, w) for u in range(n) for w in adj[u] if u < w))
        g = Multigraph(n, edges)
        ng = nx.Graph(edges)
        key = nx.weisfeiler_lehman_graph_hash(ng)
        for k, other, _ in found:
            if k == key and nx.is_isomorphic(ng, other):
                return
        found.append((key, ng, g))

    def fill(v, touched):
        while v < n and len(adj[v]) == 3:
            v += 1
        if v == n:
            emit()
            return
        if v > 0 and not adj[v]:
            return  # would be disconnected
        need = 3 - len(adj[v])
        old = [w for w in range(v + 1, touched) if len(adj[w]) < 3 and w not in adj[v]]
        for k_new in range(0, need + 1):
            if touched + k_new > n:
                break
            fresh = list(range(touched, touched + k_new))
            for chosen in combinations(old, need - k_new):
                nbrs = list(chosen) + fresh
                for w in nbrs:
                    adj[v].add(w)
                    adj[w].add(v)
                fill(v + 1, touched + k_new)
                for w in nbrs:
                    adj[v].discard(w)
                    adj[w].discard(v)

    adj0 = [1, 2, 3]
    for w in adj0:
        adj[0].add(w)
        adj[w].add(0)
    fill(1, 4)
    return [g.with_name(f"cubic{n}_{i}") for i, (_, _, g) in enumerate(found)]
