"""Bridges, block decomposition, and the graph surgeries.

Surgeries keep original vertex and edge ids stable and append new ones at the
end, so an inverse operation recovers the input exactly:

* ``expand_vertices`` keeps ``u`` as the corner for its lowest-id incident
  edge and appends two vertices for the other two corners, then appends the
  three triangle edges.
* ``subdivide_attach`` keeps edge id ``e`` for the ``u``-``w_e`` half of a
  subdivided edge ``e = uv`` and appends everything else.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .generators import GADGETS, gadget
from .graph import Multigraph, iter_bits, require_cubic, to_mask


# -- bridges and blocks ------------------------------------------------------

def _dfs_lowpoints(g: Multigraph, on_tree_edge=None, on_back_edge=None, on_finish=None):
    """Iterative DFS over all components; parallel edges are handled by edge id."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    clock = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(g.incidence[root]))]
        while stack:
            v, parent_edge, it = stack[-1]
            advanced = False
            for e in it:
                if e == parent_edge:
                    continue
                w = g.other(e, v)
                if disc[w] == -1:
                    disc[w] = low[w] = clock
                    clock += 1
                    if on_tree_edge:
                        on_tree_edge(e)
                    stack.append((w, e, iter(g.incidence[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    if on_back_edge:
                        on_back_edge(e)
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if on_finish:
                    on_finish(p, v, parent_edge, disc, low)
    return disc, low


def bridges_mask(g: Multigraph) -> int:
    found = 0

    def finish(p, v, e, disc, low):
        nonlocal found
        if low[v] > disc[p]:
            found |= 1 << e

    _dfs_lowpoints(g, on_finish=finish)
    return found


def bridges(g: Multigraph) -> frozenset[int]:
    """Edge ids whose removal disconnects ``g``."""
    if not g.is_connected():
        raise ValueError("bridges() expects a connected graph")
    return frozenset(iter_bits(bridges_mask(g)))


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    # (block index, root vertex or None when the root is not unique)
    end_blocks: tuple[tuple[int, int | None], ...]

    def block_vertices(self, g: Multigraph, index: int) -> frozenset[int]:
        return frozenset(x for e in self.blocks[index] for x in g.edges[e])


def decompose(g: Multigraph) -> BlockDecomposition:
    """Blocks (2-connected pieces or single bridges), cut vertices, end-blocks.

    End-blocks are blocks containing exactly one cut vertex ``y``; the root is
    the single neighbour of ``y`` outside the block (cubic graphs always have
    exactly one).
    """
    if not g.is_connected():
        raise ValueError("decompose() expects a connected graph")
    edge_stack: list[int] = []
    blocks: list[frozenset[int]] = []

    def push(e):
        edge_stack.append(e)

    def finish(p, v, e, disc, low):
        if low[v] >= disc[p]:
            comp = []
            while True:
                x = edge_stack.pop()
                comp.append(x)
                if x == e:
                    break
            blocks.append(frozenset(comp))

    _dfs_lowpoints(g, on_tree_edge=push, on_back_edge=push, on_finish=finish)
    blocks.sort(key=min)

    membership: dict[int, set[int]] = {}
    for i, b in enumerate(blocks):
        for e in b:
            for x in g.edges[e]:
                membership.setdefault(x, set()).add(i)
    cuts = frozenset(v for v, bs in membership.items() if len(bs) > 1)

    end_blocks = []
    if cuts:
        for i, b in enumerate(blocks):
            verts = {x for e in b for x in g.edges[e]}
            inside_cuts = verts & cuts
            if len(inside_cuts) != 1:
                continue
            (y,) = inside_cuts
            outside = {g.other(e, y) for e in g.incidence[y] if e not in b}
            root = outside.pop() if len(outside) == 1 else None
            end_blocks.append((i, root))
    return BlockDecomposition(tuple(blocks), cuts, tuple(end_blocks))


def block_subgraph(g: Multigraph, edge_ids) -> tuple[Multigraph, dict[int, int]]:
    """The subgraph spanned by ``edge_ids`` with compacted labels, plus the vertex map."""
    ids = sorted(edge_ids)
    verts = sorted({x for e in ids for x in g.edges[e]})
    relabel = {v: i for i, v in enumerate(verts)}
    sub = Multigraph(len(verts), tuple((relabel[g.edges[e][0]], relabel[g.edges[e][1]]) for e in ids))
    return sub, relabel


def is_trivial_bridge(g: Multigraph, e: int, threshold: int) -> bool:
    """True iff the smaller side of ``g - e`` has exactly ``threshold`` vertices.

    Threshold 3 is the W (multigraph) regime, 5 the W' (simple) regime.
    """
    if threshold not in (3, 5):
        raise ValueError("threshold must be 3 or 5")
    if not (bridges_mask(g) >> e) & 1:
        raise ValueError(f"edge {e} is not a bridge")
    u, v = g.edges[e]
    sides = [c for c in g.components(g.full_mask & ~(1 << e)) if u in c or v in c]
    return min(len(c) for c in sides) == threshold


# -- triangle expansion / contraction -------------------------------------------

@dataclass(frozen=True)
class ExpansionResult:
    graph: Multigraph
    expanded: frozenset[int]
    # u -> ((c0, c1, c2), (t0, t1, t2)); corner ck takes u's k-th incident edge,
    # triangle edge tk is the one opposite corner ck
    triangle_of: dict[int, tuple[tuple[int, int, int], tuple[int, int, int]]] = field(hash=False)
    edge_lift: dict[int, int] = field(hash=False)
    # u -> its incident source edge ids, in corner order
    source_incidence: dict[int, tuple[int, ...]] = field(hash=False, default_factory=dict)

    @property
    def triangle_edges_mask(self) -> int:
        return to_mask(t for _, tri in self.triangle_of.values() for t in tri)

    def corner_of(self, u: int, edge_id: int) -> int:
        """Corner vertex of u's triangle where source edge ``edge_id`` now ends."""
        corners, _ = self.triangle_of[u]
        return corners[self.source_incidence[u].index(edge_id)]


def expand_vertices(g: Multigraph, u) -> ExpansionResult:
    """Expand every vertex of ``u`` into a triangle (the graph G_U)."""
    require_cubic(g)
    U = sorted(set(u))
    for x in U:
        if not 0 <= x < g.n:
            raise ValueError(f"vertex {x} not in graph")
    edges = [list(e) for e in g.edges]
    n = g.n
    triangle_of = {}
    source_inc = {}
    new_edges = []
    for x in U:
        inc = g.incidence[x]
        source_inc[x] = inc
        corners = (x, n, n + 1)
        n += 2
        for k, e in enumerate(inc):
            if k == 0:
                continue
            a, b = edges[e]
            # a parallel pair at x: only rewrite one endpoint occurrence
            if a == x:
                edges[e][0] = corners[k]
            else:
                edges[e][1] = corners[k]
        base = g.m + len(new_edges)
        c0, c1, c2 = corners
        new_edges.extend([(c1, c2), (c0, c2), (c0, c1)])
        triangle_of[x] = (corners, (base, base + 1, base + 2))
    graph = Multigraph(n, tuple(tuple(e) for e in edges) + tuple(new_edges))
    return ExpansionResult(graph, frozenset(U), triangle_of, {e: e for e in g.edge_ids}, source_inc)


def contract_triangle(g: Multigraph, t) -> Multigraph:
    """Merge the three vertices of triangle ``t`` into its smallest vertex.

    The two larger vertices disappear (higher labels shift down) and the three
    triangle edges are removed; other edges keep their relative order.
    """
    t = tuple(t)
    if len(set(t)) != 3:
        raise ValueError("a triangle is three distinct edge ids")
    verts = sorted({x for e in t for x in g.edges[e]})
    if len(verts) != 3:
        raise ValueError("edges do not form a triangle on three vertices")
    pairs = sorted(tuple(sorted(g.edges[e])) for e in t)
    a, b, c = verts
    if pairs != [(a, b), (a, c), (b, c)]:
        raise ValueError("edges do not form a triangle on three vertices")
    vs = set(verts)
    tset = set(t)
    for i, (x, y) in enumerate(g.edges):
        if i not in tset and x in vs and y in vs:
            raise ValueError(f"edge {i} parallels the triangle; contracting would create a loop")

    def relabel(x):
        if x in vs:
            return a
        return x - (x > b) - (x > c)

    edges = tuple((relabel(x), relabel(y)) for i, (x, y) in enumerate(g.edges) if i not in tset)
    return Multigraph(g.n - 2, edges)


# -- subdivide and attach -------------------------------------------------------

@dataclass(frozen=True)
class Attachment:
    root: int                 # w_e
    split_edge: int           # new id of the w_e-v half of e
    bridge: int               # edge joining w_e to the gadget
    vertices: tuple[int, ...]  # gadget vertices, attachment vertex first
    edges: tuple[int, ...]     # gadget edges in gadget order


@dataclass(frozen=True)
class AttachResult:
    graph: Multigraph
    subdivided: frozenset[int]
    gadget: str
    root_of: dict[int, Attachment] = field(hash=False)


def subdivide_attach(g: Multigraph, e0, gadget_name: str = "W") -> AttachResult:
    """Subdivide each edge of ``e0`` with a new vertex w_e and hang a gadget on it."""
    gad = gadget(gadget_name)
    E0 = sorted(set(e0))
    for e in E0:
        if not 0 <= e < g.m:
            raise ValueError(f"edge {e} not in graph")
    edges = [tuple(e) for e in g.edges]
    n = g.n
    root_of = {}
    for e in E0:
        u, v = edges[e]
        w = n
        n += 1
        edges[e] = (u, w)
        split = len(edges)
        edges.append((w, v))
        label = {}
        for x in range(gad.n):
            label[x] = n
            n += 1
        bridge = len(edges)
        edges.append((w, label[0]))
        first = len(edges)
        edges.extend((label[a], label[b]) for a, b in gad.edges)
        root_of[e] = Attachment(
            root=w,
            split_edge=split,
            bridge=bridge,
            vertices=tuple(label[x] for x in range(gad.n)),
            edges=tuple(range(first, first + gad.m)),
        )
    return AttachResult(Multigraph(n, tuple(edges)), frozenset(E0), gadget_name, root_of)


__all__ = [
    "BlockDecomposition",
    "ExpansionResult",
    "AttachResult",
    "Attachment",
    "GADGETS",
    "bridges",
    "bridges_mask",
    "decompose",
    "block_subgraph",
    "is_trivial_bridge",
    "expand_vertices",
    "contract_triangle",
    "subdivide_attach",
]
