"""The expansion parameters t(G) and T(G), with certificates and checkers.

t(G): fewest vertices to expand into triangles so the result has a perfect
matching. T(G): fewest so the result is covered by four perfect matchings.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, islice
from typing import Optional, Union

from .covers import (
    CYCLE_SPACE_MAX_DIM,
    DEFAULT_NODE_BUDGET,
    FourCoverCertificate,
    cycle_space_dimension,
    even_subgraph_masks,
    five_cdc,
    four_pm_cover,
    scc_exact,
    verify_cover,
)
from .errors import SearchInconclusive
from .generators import caterpillar_tree, generate_from_tree
from .graph import Multigraph, is_perfect_matching_mask, popcount, require_cubic
from .matching import (
    ORACLE_MAX_EDGES,
    Matching,
    lift_parity_subgraph,
    max_even_subgraph,
    min_parity_subgraph,
)
from .reports import CONJECTURE, FAIL, INCONCLUSIVE, INFO, PASS, THEOREM, Report, Row, compare
from .structure import bridges_mask, expand_vertices


@dataclass(frozen=True)
class ParamCertificate:
    """``value`` is None only for an inexact T search that found no witness;
    ``lower_bound`` is the smallest size not yet ruled out."""

    kind: str
    value: Optional[int]
    witness_u: frozenset[int]
    witness: Union[Matching, FourCoverCertificate, None]
    exact: bool
    lower_bound: int = 0


def verify_param_certificate(g: Multigraph, cert: ParamCertificate) -> bool:
    """Re-expand ``g`` at the witness set and replay the witness predicate."""
    if cert.witness is None:
        return cert.value is None and not cert.exact
    if cert.value != len(cert.witness_u):
        return False
    h = expand_vertices(g, cert.witness_u).graph
    if cert.kind == "t":
        return isinstance(cert.witness, Matching) and is_perfect_matching_mask(h, cert.witness.mask)
    if cert.kind == "T":
        return isinstance(cert.witness, FourCoverCertificate) and verify_cover(h, cert.witness).valid
    return False


# -- t ------------------------------------------------------------------------------------

def t_exact(g: Multigraph, backend: str = "matching") -> ParamCertificate:
    """t(G) as the fewest degree-3 vertices of a parity subgraph.

    The minimum parity subgraph J lifts to a perfect matching of G_U with
    U = V3(J), which is the witness.
    """
    require_cubic(g)
    if not g.is_connected():
        raise ValueError("t_exact needs a connected graph")
    j = min_parity_subgraph(g, backend=backend)
    value = len(j.v3)
    # 2|E(J)| = |V| + 2|V3(J)|
    if 2 * len(j.edges) != g.n + 2 * value:
        raise AssertionError("parity subgraph size identity violated")
    _, m = lift_parity_subgraph(g, j)
    return ParamCertificate("t", value, j.v3, m, True)


# -- T ------------------------------------------------------------------------------------

def vertex_orbits(g: Multigraph) -> list[frozenset[int]]:
    """Orbits of the automorphism group on vertices, by marked-vertex isomorphism tests."""
    from networkx.algorithms.isomorphism import MultiGraphMatcher

    def marked(v):
        nxg = g.to_networkx()
        for x in nxg.nodes:
            nxg.nodes[x]["mark"] = x == v
        return nxg

    orbit_of: dict[int, int] = {}
    orbits: list[set[int]] = []
    for v in range(g.n):
        if v in orbit_of:
            continue
        orbit_of[v] = len(orbits)
        orbits.append({v})
        gv = marked(v)
        for w in range(v + 1, g.n):
            if w in orbit_of:
                continue
            gm = MultiGraphMatcher(gv, marked(w), node_match=lambda a, b: a["mark"] == b["mark"])
            if gm.is_isomorphic():
                orbit_of[w] = orbit_of[v]
                orbits[-1].add(w)
    return [frozenset(o) for o in orbits]


def _try_subset(args):
    g, u, pm_limit = args
    h = expand_vertices(g, u).graph
    try:
        return four_pm_cover(h, limit=pm_limit), False
    except SearchInconclusive:
        return None, True


def T_exact(
    g: Multigraph,
    budget: Optional[int] = None,
    timeout: Optional[float] = None,
    pm_limit: Optional[int] = None,
    prune_orbits: bool = False,
    jobs: int = 1,
) -> ParamCertificate:
    """T(G) by trying vertex subsets of size 0, 1, ..., ``budget`` in lexicographic order.

    The first subset U whose expansion has a four-perfect-matching cover is
    the witness. If the budget or timeout runs out first, the certificate is
    inexact and ``lower_bound`` records how far the exclusion got.
    """
    require_cubic(g)
    if bridges_mask(g):
        raise ValueError("T is defined only for bridgeless graphs; input has bridges")
    budget = g.n if budget is None else min(budget, g.n)
    deadline = None if timeout is None else time.monotonic() + timeout
    reps = None
    if prune_orbits:
        reps = frozenset(min(o) for o in vertex_orbits(g))
    excluded = 0  # every size below this is ruled out
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for k in range(budget + 1):
            level_clean = True
            subsets = (
                u for u in combinations(range(g.n), k)
                if reps is None or k == 0 or any(x in reps for x in u)
            )
            chunk_size = max(1, 4 * jobs)
            while True:
                chunk = list(islice(subsets, chunk_size))
                if not chunk:
                    break
                if deadline is not None and time.monotonic() > deadline:
                    return ParamCertificate("T", None, frozenset(), None, False, excluded)
                args = [(g, frozenset(u), pm_limit) for u in chunk]
                results = pool.map(_try_subset, args) if pool else map(_try_subset, args)
                for u, (cover, inconclusive) in zip(chunk, results):
                    if cover is not None:
                        return ParamCertificate("T", k, frozenset(u), cover, excluded == k, excluded)
                    if inconclusive:
                        level_clean = False
            if level_clean and excluded == k:
                excluded = k + 1
        return ParamCertificate("T", None, frozenset(), None, False, excluded)
    finally:
        if pool:
            pool.shutdown()


# -- identity and bounds ---------------------------------------------------------------------

def _ell_by_cycle_space(g: Multigraph) -> Optional[int]:
    if cycle_space_dimension(g) > CYCLE_SPACE_MAX_DIM:
        return None
    return max(popcount(s) for s in even_subgraph_masks(g))


def ell_exact(g: Multigraph) -> tuple[int, str]:
    """ℓ(G) and how it was computed, preferring routes independent of the T-join backend."""
    ell = _ell_by_cycle_space(g)
    if ell is not None:
        return ell, "cycle-space"
    if g.m <= ORACLE_MAX_EDGES:
        return len(max_even_subgraph(g, backend="oracle").edges), "oracle"
    return len(max_even_subgraph(g, backend="matching").edges), "matching"


def check_gallai(g: Multigraph) -> Report:
    """|V| = t + ℓ, with t from the minimum parity subgraph and ℓ computed separately."""
    require_cubic(g)
    rep = Report(g.host_hash(), g.name)
    j = min_parity_subgraph(g)
    t = len(j.v3)
    ell, route = ell_exact(g)
    rep.values.update({"t": t, "ell": ell, "V": g.n})
    rep.add(compare("parity-size", THEOREM, 2 * len(j.edges), "=", g.n + 2 * t, "2|E(J)| = |V| + 2|V3(J)|"))
    rep.add(compare("gallai", THEOREM, g.n, "=", t + ell, f"|V| = t + ell; ell via {route}"))
    return rep


def three_edge_connected(g: Multigraph) -> bool:
    if not g.is_connected() or bridges_mask(g):
        return False
    for e in g.edge_ids:
        rest = Multigraph(g.n, tuple(x for i, x in enumerate(g.edges) if i != e))
        if not rest.is_connected() or bridges_mask(rest):
            return False
    return True


def check_bounds(
    g: Multigraph,
    budget: Optional[int] = None,
    timeout: Optional[float] = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
    with_T: bool = True,
    with_scc: bool = True,
    with_cdc: bool = True,
    T_cert: Optional[ParamCertificate] = None,
) -> Report:
    """One row per inequality. THEOREM rows are proven facts; CONJECTURE rows are open."""
    require_cubic(g)
    rep = Report(g.host_hash(), g.name)
    t = t_exact(g).value
    n, m = Fraction(g.n), Fraction(g.m)
    rep.values["t"] = t
    rep.add(compare("t<V/4", THEOREM, t, "<", n / 4))
    if g.is_simple():
        rep.add(compare("t<V/6", THEOREM, t, "<", n / 6, "simple graph"))
    if bridges_mask(g):
        rep.add(Row("bridgeless", INFO, note="graph has bridges; T, scc and CDC rows skipped"))
        return rep

    T = None
    if with_T:
        cert = T_cert if T_cert is not None else T_exact(g, budget=budget, timeout=timeout)
        T = cert.value if cert.exact else None
        rep.values["T"] = cert.value
        rep.values["T_exact"] = cert.exact
        rep.add(compare("t<=T", THEOREM, t, "<=", T))
        rep.add(compare("T<=V/10", CONJECTURE, T, "<=", n / 10))

    scc = None
    if with_scc:
        res = scc_exact(g, node_budget=node_budget)
        scc = res.length if res.exact else None
        rep.values["scc"] = res.length
        rep.values["scc_exact"] = res.exact
        four_third = Fraction(4, 3) * m
        if with_T:
            rep.add(compare("scc<=4E/3+T", THEOREM, scc, "<=", None if T is None else four_third + T))
            if three_edge_connected(g):
                rep.add(compare("scc=4E/3+T", CONJECTURE, scc, "=", None if T is None else four_third + T,
                                "3-edge-connected"))
            if scc is not None and T is not None:
                ok = (scc == four_third) == (T == 0)
                rep.add(Row("scc=4E/3<=>T=0", THEOREM, scc == four_third, "iff", T == 0, PASS if ok else FAIL))
            else:
                rep.add(Row("scc=4E/3<=>T=0", THEOREM, None, "iff", None, INCONCLUSIVE))
        rep.add(compare("scc<=7E/5", CONJECTURE, scc, "<=", Fraction(7, 5) * m))

    if with_cdc:
        try:
            cdc = five_cdc(g, maximize_c0=True, node_budget=node_budget)
        except SearchInconclusive:
            cdc = None
            rep.add(Row("5cdc-exists", CONJECTURE, status=INCONCLUSIVE, note="search budget exhausted"))
        if cdc is not None:
            c0 = len(cdc.c0.edges)
            rep.values["max_c0"] = c0
            rep.add(compare("5cdc-exists", CONJECTURE, 1, "=", 1))
            rep.add(compare("C0>=3E/5", CONJECTURE, c0, ">=", Fraction(3, 5) * m, "largest C0 over all 5-CDCs"))
            if with_T:
                rep.add(compare("T<=V-|C0|", THEOREM, T, "<=", g.n - c0))
                rep.add(compare("T<=2V/5", THEOREM, T, "<=", 2 * n / 5, "given a 5-CDC"))
        elif not any(r.name == "5cdc-exists" for r in rep.rows):
            rep.add(compare("5cdc-exists", CONJECTURE, 0, "=", 1))
    return rep


# -- families ---------------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilyRow:
    n: int
    k1: int
    vertices: int
    ell: int
    t: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.t, self.vertices)


def family_table(gadget: str, n_values) -> list[FamilyRow]:
    """Exact (n, |V|, ℓ, t) for the caterpillar tree on n vertices with gadgets on its leaves."""
    rows = []
    for n in n_values:
        tree = caterpillar_tree(n)
        g = generate_from_tree(tree, gadget)
        t = t_exact(g).value
        ell = len(max_even_subgraph(g).edges)
        rows.append(FamilyRow(n, tree.k1, g.n, ell, t))
    return rows
