"""Cycle covers, four-perfect-matching covers, 5-CDCs and the transforms between them.

All search kernels work on edge bitmasks over the cycle space (the even
subgraphs) or over the list of perfect matchings. Fractional bounds are
compared in integers: ``3 * length`` against ``4 * |E|``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Optional, Union

from .errors import SearchInconclusive
from .graph import (
    Multigraph,
    from_mask,
    is_even_mask,
    is_parity_mask,
    is_perfect_matching_mask,
    iter_bits,
    lowest_bit,
    popcount,
    require_cubic,
    to_mask,
)
from .matching import EvenSubgraph, Matching, ParitySubgraph, perfect_matching_masks
from .structure import bridges_mask, expand_vertices

CYCLE_SPACE_MAX_DIM = 24
DEFAULT_NODE_BUDGET = 2_000_000


# -- certificate types -------------------------------------------------------------

def _depths(members, m: int) -> list[int]:
    depth = [0] * m
    for s in members:
        for e in s.edges:
            depth[e] += 1
    return depth


@dataclass(frozen=True)
class CycleCover:
    members: tuple[EvenSubgraph, ...]

    @property
    def length(self) -> int:
        return sum(len(s.edges) for s in self.members)

    def depth_of(self, m: int) -> list[int]:
        return _depths(self.members, m)

    def depth(self, m: int) -> int:
        return max(self.depth_of(m), default=0)


@dataclass(frozen=True)
class FourCoverCertificate:
    matchings: tuple[Matching, ...]


@dataclass(frozen=True)
class FiveCDC:
    """Five even subgraphs covering every edge exactly twice; members[0] is C0.

    Members may be empty; ``empty_members`` reports how many are.
    """

    members: tuple[EvenSubgraph, ...]

    @property
    def c0(self) -> EvenSubgraph:
        return self.members[0]

    @property
    def empty_members(self) -> int:
        return sum(1 for s in self.members if not s.edges)


@dataclass(frozen=True)
class ParityFamily:
    members: tuple[ParitySubgraph, ...]
    max_edge_multiplicity: int


def _order_members(masks) -> tuple[EvenSubgraph, ...]:
    # largest first, ties by lexicographic edge ids
    ordered = sorted(masks, key=lambda s: (-popcount(s), sorted(iter_bits(s))))
    return tuple(EvenSubgraph(from_mask(s)) for s in ordered)


# -- cycle space ---------------------------------------------------------------------

def cycle_space_dimension(g: Multigraph) -> int:
    return g.m - g.n + len(g.components())


@lru_cache(maxsize=256)
def even_subgraph_masks(g: Multigraph) -> tuple[int, ...]:
    """Every element of the cycle space, the empty set first (Gray-code order)."""
    dim = cycle_space_dimension(g)
    if dim > CYCLE_SPACE_MAX_DIM:
        raise ValueError(f"cycle space dimension {dim} exceeds cap {CYCLE_SPACE_MAX_DIM}")
    path = [None] * g.n  # tree-path mask from the component root
    tree = 0
    for comp in g.components():
        root = comp[0]
        path[root] = 0
        stack = [root]
        while stack:
            x = stack.pop()
            for e in g.incidence[x]:
                y = g.other(e, x)
                if path[y] is None:
                    path[y] = path[x] ^ (1 << e)
                    tree |= 1 << e
                    stack.append(y)
    basis = []
    for e in range(g.m):
        if not (tree >> e) & 1:
            u, v = g.edges[e]
            basis.append(path[u] ^ path[v] ^ (1 << e))
    out = [0]
    cur = 0
    for i in range(1, 1 << len(basis)):
        cur ^= basis[(i & -i).bit_length() - 1]
        out.append(cur)
    return tuple(out)


def enumerate_even_subgraphs(g: Multigraph) -> list[EvenSubgraph]:
    return [EvenSubgraph(from_mask(s)) for s in even_subgraph_masks(g)]


# -- four perfect matchings ------------------------------------------------------------

def four_pm_cover(
    g: Multigraph, limit: Optional[int] = None, distinct: bool = False
) -> Optional[FourCoverCertificate]:
    """Four perfect matchings whose union is E(g), or None if none exist.

    Repeated matchings are allowed unless ``distinct``. If the matching
    enumeration hits ``limit`` and no cover is found among the matchings seen,
    the answer is inconclusive and ``SearchInconclusive`` is raised.
    """
    require_cubic(g)
    pms = perfect_matching_masks(g, limit)
    truncated = limit is not None and len(pms) >= limit
    full = g.full_mask
    containing: list[list[int]] = [[] for _ in range(g.m)]
    for i, pm in enumerate(pms):
        for e in iter_bits(pm):
            containing[e].append(i)
    half = g.n // 2

    def rec(covered: int, chosen: list[int]):
        if covered == full:
            return chosen
        left = 4 - len(chosen)
        if left == 0 or popcount(full & ~covered) > left * half:
            return None
        e = lowest_bit(full & ~covered)
        for i in containing[e]:
            if distinct and i in chosen:
                continue
            got = rec(covered | pms[i], chosen + [i])
            if got is not None:
                return got
        return None

    found = rec(0, []) if g.m else []
    if found is None:
        if truncated:
            raise SearchInconclusive(f"perfect matching enumeration stopped at limit {limit}")
        return None
    if distinct:
        spare = [i for i in range(len(pms)) if i not in found]
        if len(found) + len(spare) < 4:
            if truncated:
                raise SearchInconclusive("too few distinct matchings enumerated")
            return None
        found = found + spare[: 4 - len(found)]
    elif found:
        found = found + [found[0]] * (4 - len(found))
    else:
        return None
    return FourCoverCertificate(tuple(Matching(from_mask(pms[i])) for i in found))


# -- shortest cycle cover ------------------------------------------------------------------

class SccResult(NamedTuple):
    length: Optional[int]
    cover: Optional[CycleCover]
    exact: bool


def scc_lower_bound(g: Multigraph) -> int:
    """ceil(4|E|/3), valid for bridgeless cubic graphs."""
    return -(-4 * g.m // 3)


def scc_exact(
    g: Multigraph,
    max_members: int = 4,
    max_depth: Optional[int] = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> SccResult:
    """Shortest cycle cover using at most ``max_members`` even subgraphs.

    Branch and bound: branch on the lowest uncovered edge over the even
    subgraphs containing it; prune on ``length + |uncovered|``. ``exact`` is
    True when the length meets ceil(4|E|/3) or the search finished within the
    node budget. ``max_depth=2`` restricts the search to covers of depth <= 2.
    """
    require_cubic(g)
    if bridges_mask(g):
        raise ValueError("scc_exact needs a bridgeless graph")
    if max_depth not in (None, 2):
        raise ValueError("max_depth must be None or 2")
    evens = [s for s in even_subgraph_masks(g) if s]
    full = g.full_mask
    containing: list[list[int]] = [[] for _ in range(g.m)]
    for s in sorted(evens, key=lambda s: (-popcount(s), s)):
        for e in iter_bits(s):
            containing[e].append(s)
    floor = scc_lower_bound(g)
    best_len = [None]
    best_cover: list = [None]
    nodes = [0]

    class _Stop(Exception):
        pass

    def rec(covered: int, twice: int, length: int, chosen: list[int]):
        nodes[0] += 1
        if nodes[0] > node_budget:
            raise _Stop
        if covered == full:
            if best_len[0] is None or length < best_len[0]:
                best_len[0] = length
                best_cover[0] = list(chosen)
                if length <= floor:
                    raise _Stop
            return
        if len(chosen) == max_members:
            return
        uncovered = full & ~covered
        bound = best_len[0]
        if bound is not None and length + popcount(uncovered) >= bound:
            return
        e = lowest_bit(uncovered)
        cands = containing[e]
        if max_depth == 2:
            cands = [s for s in cands if not s & twice]
        cands = sorted(cands, key=lambda s: (-popcount(s & uncovered), popcount(s)))
        for s in cands:
            new_len = length + popcount(s)
            bound = best_len[0]
            if bound is not None and new_len + popcount(uncovered & ~s) >= bound:
                continue
            chosen.append(s)
            rec(covered | s, twice | (covered & s), new_len, chosen)
            chosen.pop()

    finished = True
    try:
        rec(0, 0, 0, [])
    except _Stop:
        finished = best_len[0] is not None and best_len[0] <= floor
    if best_len[0] is None:
        return SccResult(None, None, False)
    cover = CycleCover(_order_members(best_cover[0]))
    return SccResult(best_len[0], cover, finished or best_len[0] <= floor)


# -- 5-cycle double covers --------------------------------------------------------------------

def _complete_double_cover(evens, full: int, once: int, twice: int, slots: int, budget: list[int]):
    """Add up to ``slots`` even subgraphs so every edge reaches depth exactly 2."""
    max_size = max((popcount(s) for s in evens), default=0)
    containing: dict[int, list[int]] = {}
    for s in evens:
        for e in iter_bits(s):
            containing.setdefault(e, []).append(s)

    def rec(once: int, twice: int, slots: int, chosen: list[int]):
        budget[0] -= 1
        if budget[0] < 0:
            raise SearchInconclusive("5-CDC search exceeded its node budget")
        if twice == full:
            return chosen
        if slots == 0:
            return None
        if (full & ~once) and slots < 2:
            return None
        deficit = 2 * popcount(full) - popcount(once) - popcount(twice)
        if deficit > slots * max_size:
            return None
        e = lowest_bit(full & ~twice)
        for s in containing.get(e, ()):
            if s & twice:
                continue
            got = rec(once | s, twice | (once & s), slots - 1, chosen + [s])
            if got is not None:
                return got
        return None

    return rec(once, twice, slots, [])


def five_cdc(
    g: Multigraph, maximize_c0: bool = False, node_budget: int = DEFAULT_NODE_BUDGET,
    c0: Optional[int] = None,
) -> Optional[FiveCDC]:
    """A 5-cycle double cover, or None if none exists (e.g. g has a bridge).

    With ``maximize_c0`` the returned cover has the largest possible C0 among
    all 5-CDCs. ``c0`` (an edge mask) forces that even subgraph to be a member.
    """
    require_cubic(g)
    if bridges_mask(g):
        return None
    evens = [s for s in even_subgraph_masks(g) if s]
    full = g.full_mask
    budget = [node_budget]
    if c0 is not None:
        if not is_even_mask(g, c0):
            raise ValueError("forced member is not an even subgraph")
        rest = _complete_double_cover(evens, full, c0, 0, 4, budget)
        return None if rest is None else FiveCDC(_order_members([c0] + rest + [0] * (4 - len(rest))))
    if maximize_c0:
        for first in sorted(evens, key=lambda s: (-popcount(s), sorted(iter_bits(s)))):
            rest = _complete_double_cover(evens, full, first, 0, 4, budget)
            if rest is not None:
                return FiveCDC(_order_members([first] + rest + [0] * (4 - len(rest))))
        return None
    found = _complete_double_cover(evens, full, 0, 0, 5, budget)
    if found is None:
        return None
    return FiveCDC(_order_members(found + [0] * (5 - len(found))))


def cdc_to_parity_family(g: Multigraph, cdc: FiveCDC) -> ParityFamily:
    """The complements of C0 Δ Ci (i = 1..4): four parity subgraphs.

    Edges of C0 are covered once by the family and all other edges twice.
    """
    report = verify_cover(g, cdc)
    if not report.valid:
        raise ValueError(f"invalid 5-CDC: {report.message}")
    full = g.full_mask
    c0 = cdc.members[0].mask
    members = []
    for ci in cdc.members[1:]:
        j = full & ~(c0 ^ ci.mask)
        if not is_parity_mask(g, j):
            raise AssertionError("complement of C0 Δ Ci is not a parity subgraph")
        members.append(ParitySubgraph.from_edges(g, iter_bits(j)))
    depth = _depths(members, g.m)
    for e in range(g.m):
        want = 1 if (c0 >> e) & 1 else 2
        if depth[e] != want:
            raise AssertionError(f"edge {e} covered {depth[e]} times, expected {want}")
    return ParityFamily(tuple(members), max(depth, default=0))


def cdc_to_expansion_set(g: Multigraph, cdc: FiveCDC) -> frozenset[int]:
    """Vertices of degree 3 in some member of the derived parity family.

    No endpoint of a C0 edge qualifies, so |U| <= |V| - |C0|.
    """
    family = cdc_to_parity_family(g, cdc)
    u = frozenset().union(*(j.v3 for j in family.members))
    if len(u) > g.n - len(cdc.c0.edges):
        raise AssertionError("expansion set larger than |V| - |C0|")
    return u


def depth2_scc_to_expansion(g: Multigraph, cover: CycleCover):
    """Expand the vertices meeting three depth-2 edges and lift the cover.

    Each member passing through an expanded vertex u (using two of its edges)
    is closed up with the triangle edge joining those two corners. Returns
    ``(u, lifted_cover, expansion)``; the lifted cover has length
    4/3 |E(G_U)| and its depth-2 edges form a perfect matching of G_U.
    """
    require_cubic(g)
    depth = cover.depth_of(g.m)
    if any(d == 0 for d in depth):
        raise ValueError("cover misses an edge")
    if max(depth, default=0) > 2:
        raise ValueError("cover has depth greater than 2")
    U = frozenset(v for v in range(g.n) if all(depth[e] == 2 for e in g.incidence[v]))
    exp = expand_vertices(g, U)
    lifted = []
    for s in cover.members:
        mask = s.mask
        for u in U:
            _, tri = exp.triangle_of[u]
            inc = exp.source_incidence[u]
            used = [k for k, e in enumerate(inc) if (mask >> e) & 1]
            if len(used) == 2:
                (missing,) = {0, 1, 2} - set(used)
                mask |= 1 << tri[missing]
        lifted.append(EvenSubgraph(from_mask(mask)))
    lifted_cover = CycleCover(tuple(lifted))
    h = exp.graph
    if 3 * lifted_cover.length != 4 * h.m:
        raise AssertionError("lifted cover is not of length 4/3 |E(G_U)|")
    ldepth = lifted_cover.depth_of(h.m)
    if not is_perfect_matching_mask(h, to_mask(e for e, d in enumerate(ldepth) if d == 2)):
        raise AssertionError("doubly covered edges do not form a perfect matching")
    return U, lifted_cover, exp


# -- verification ---------------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverReport:
    valid: bool
    kind: str
    message: str = "ok"
    length: Optional[int] = None
    depth: Optional[int] = None
    extra: dict = field(default_factory=dict, hash=False)


Certificate = Union[CycleCover, FiveCDC, FourCoverCertificate, ParityFamily]


def verify_cover(g: Multigraph, c: Certificate) -> CoverReport:
    """Replay every invariant of a certificate against ``g``; report the first violation."""
    kind = type(c).__name__
    if isinstance(c, FourCoverCertificate):
        members = c.matchings
        if len(members) != 4:
            return CoverReport(False, kind, f"expected 4 matchings, got {len(members)}")
        for i, mt in enumerate(members):
            if not is_perfect_matching_mask(g, mt.mask):
                return CoverReport(False, kind, f"member {i} is not a perfect matching")
    elif isinstance(c, ParityFamily):
        members = c.members
        if len(members) != 4:
            return CoverReport(False, kind, f"expected 4 parity subgraphs, got {len(members)}")
        for i, j in enumerate(members):
            if not is_parity_mask(g, j.mask):
                return CoverReport(False, kind, f"member {i} is not a parity subgraph")
    elif isinstance(c, (CycleCover, FiveCDC)):
        members = c.members
        if isinstance(c, FiveCDC) and len(members) != 5:
            return CoverReport(False, kind, f"expected 5 members, got {len(members)}")
        for i, s in enumerate(members):
            if any(e < 0 or e >= g.m for e in s.edges):
                return CoverReport(False, kind, f"member {i} names an edge outside the graph")
            if not is_even_mask(g, s.mask):
                return CoverReport(False, kind, f"member {i} is not an even subgraph")
    else:
        raise TypeError(f"cannot verify {kind}")

    depth = _depths(members, g.m)
    length = sum(depth)
    top = max(depth, default=0)
    uncovered = [e for e, d in enumerate(depth) if d == 0]
    if uncovered:
        return CoverReport(False, kind, f"edge {uncovered[0]} is uncovered", length, top)
    if isinstance(c, FiveCDC):
        wrong = [e for e, d in enumerate(depth) if d != 2]
        if wrong:
            return CoverReport(False, kind, f"edge {wrong[0]} has depth {depth[wrong[0]]}, expected 2", length, top)
    if isinstance(c, ParityFamily) and top > 2:
        e = depth.index(top)
        return CoverReport(False, kind, f"edge {e} covered {top} times, at most 2 allowed", length, top)
    return CoverReport(True, kind, "ok", length, top)
