"""Loop-free undirected multigraphs with positional edge identities.

An edge is identified by its index in ``Multigraph.edges``; parallel edges are
therefore distinguishable, and every subgraph in this package is a set of
edge ids. Internally the search kernels represent edge sets as Python ``int``
bitmasks (bit ``i`` set means edge ``i`` is present).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional


@dataclass(frozen=True)
class Multigraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        n = self.vertex_count
        for i, (u, v) in enumerate(edges):
            if u == v:
                raise ValueError(f"edge {i} is a loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {i} = ({u}, {v}) has an endpoint outside [0, {n})")

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def edge_ids(self) -> range:
        return range(len(self.edges))

    @property
    def full_mask(self) -> int:
        return (1 << len(self.edges)) - 1

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Edge ids incident to each vertex, ascending."""
        inc: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def star_masks(self) -> tuple[int, ...]:
        out = []
        for ids in self.incidence:
            mask = 0
            for i in ids:
                mask |= 1 << i
            out.append(mask)
        return tuple(out)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def degrees(self) -> list[int]:
        return [len(x) for x in self.incidence]

    def other(self, edge_id: int, v: int) -> int:
        a, b = self.edges[edge_id]
        return b if a == v else a

    def neighbors(self, v: int) -> list[int]:
        return [self.other(e, v) for e in self.incidence[v]]

    def is_cubic(self) -> bool:
        return all(len(x) == 3 for x in self.incidence)

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges:
            key = (min(u, v), max(u, v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def components(self, edge_mask: Optional[int] = None) -> list[list[int]]:
        """Connected components, optionally using only edges in ``edge_mask``."""
        parent = list(range(self.vertex_count))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, (u, v) in enumerate(self.edges):
            if edge_mask is not None and not (edge_mask >> i) & 1:
                continue
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
        groups: dict[int, list[int]] = {}
        for x in range(self.vertex_count):
            groups.setdefault(find(x), []).append(x)
        return list(groups.values())

    def is_connected(self) -> bool:
        return self.vertex_count <= 1 or len(self.components()) == 1

    def degree_in(self, edge_set: Iterable[int]) -> list[int]:
        deg = [0] * self.vertex_count
        for i in edge_set:
            u, v = self.edges[i]
            deg[u] += 1
            deg[v] += 1
        return deg

    def with_name(self, name: str) -> "Multigraph":
        return Multigraph(self.vertex_count, self.edges, name)

    def to_networkx(self):
        import networkx as nx

        g = nx.MultiGraph()
        g.add_nodes_from(range(self.vertex_count))
        for i, (u, v) in enumerate(self.edges):
            g.add_edge(u, v, key=i)
        return g

    def host_hash(self) -> str:
        """Content hash of the edge-list serialization (name excluded)."""
        text = serialize_edge_list(self)
        return hashlib.sha256(text.encode("ascii")).hexdigest()[:16]


def serialize_edge_list(g: Multigraph) -> str:
    lines = [f"{g.vertex_count} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


# -- edge-set helpers -------------------------------------------------------

def to_mask(edge_ids: Iterable[int]) -> int:
    mask = 0
    for i in edge_ids:
        mask |= 1 << i
    return mask


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_even_mask(g: Multigraph, mask: int) -> bool:
    return all(popcount(s & mask) % 2 == 0 for s in g.star_masks)


def is_perfect_matching_mask(g: Multigraph, mask: int) -> bool:
    return all(popcount(s & mask) == 1 for s in g.star_masks)


def is_parity_mask(g: Multigraph, mask: int) -> bool:
    return all(popcount(s & mask) % 2 == 1 for s in g.star_masks)


# -- classification ---------------------------------------------------------

@dataclass(frozen=True)
class CubicCertificate:
    graph: Multigraph
    cubic: bool
    simple: bool
    bridgeless: bool
    connected: bool
    offending_vertex: Optional[int] = None

    def as_dict(self) -> dict:
        return {
            "cubic": self.cubic,
            "simple": self.simple,
            "bridgeless": self.bridgeless,
            "connected": self.connected,
            "offending_vertex": self.offending_vertex,
        }


def classify(g: Multigraph) -> CubicCertificate:
    """Report cubicity, simplicity, bridgelessness and connectivity.

    A non-cubic graph is not an error: the certificate has ``cubic=False`` and
    names the first vertex whose degree is not 3.
    """
    from .structure import bridges_mask

    offending = next((v for v in range(g.n) if g.degree(v) != 3), None)
    return CubicCertificate(
        graph=g,
        cubic=offending is None,
        simple=g.is_simple(),
        bridgeless=bridges_mask(g) == 0,
        connected=g.is_connected(),
        offending_vertex=offending,
    )


def require_cubic(g: Multigraph) -> None:
    from .errors import NotCubicError

    for v in range(g.n):
        if g.degree(v) != 3:
            raise NotCubicError(f"vertex {v} has degree {g.degree(v)}, expected 3")
