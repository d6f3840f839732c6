"""H-colorings of cubic graphs and the Petersen coloring -> 5-CDC transform."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Optional

from .covers import FiveCDC, _order_members, even_subgraph_masks, five_cdc, verify_cover
from .errors import SearchInconclusive
from .generators import generate
from .graph import Multigraph, from_mask, iter_bits, popcount, require_cubic, to_mask
from .matching import EvenSubgraph

FIXTURE_ENV = "TRICUB_FIXTURES"
DEFAULT_FIXTURE = Path(__file__).with_name("data") / "p10_cdc.json"


@dataclass(frozen=True)
class HColoring:
    source: Multigraph
    target: Multigraph
    # phi[e] is the target edge id given to source edge e
    phi: tuple[int, ...]


@dataclass(frozen=True)
class HColoringReport:
    valid: bool
    message: str = "ok"
    vertex: Optional[int] = None
    vertex_map: Optional[tuple[int, ...]] = None


def _star_index(h: Multigraph) -> dict[frozenset[int], int]:
    return {frozenset(inc): w for w, inc in enumerate(h.incidence)}


def verify_hcoloring(c: HColoring) -> HColoringReport:
    g, h, phi = c.source, c.target, c.phi
    if len(phi) != g.m:
        return HColoringReport(False, f"phi has {len(phi)} entries for {g.m} edges")
    if any(not 0 <= x < h.m for x in phi):
        return HColoringReport(False, "phi names an edge outside the target")
    stars = _star_index(h)
    vmap = []
    for v in range(g.n):
        colors = [phi[e] for e in g.incidence[v]]
        w = stars.get(frozenset(colors)) if len(set(colors)) == len(colors) else None
        if w is None:
            return HColoringReport(False, f"colors {sorted(colors)} at vertex {v} are not a vertex star of the target", v)
        vmap.append(w)
    return HColoringReport(True, vertex_map=tuple(vmap))


def _edge_order(g: Multigraph) -> list[int]:
    """Most-constrained first: repeatedly take the edge touching the most placed edges."""
    order: list[int] = []
    remaining = set(g.edge_ids)
    touching = [0] * g.m
    while remaining:
        e = max(remaining, key=lambda x: (touching[x], -x))
        remaining.discard(e)
        order.append(e)
        for x in g.edges[e]:
            for f in g.incidence[x]:
                if f != e:
                    touching[f] += 1
    return order


def find_hcoloring(g: Multigraph, h: Multigraph, budget: int = 1_000_000) -> Optional[HColoring]:
    """Backtracking search for an H-coloring of ``g``.

    Returns None only when the search space is exhausted; raises
    ``SearchInconclusive`` when ``budget`` nodes are used up first.
    """
    require_cubic(g)
    require_cubic(h)
    stars = [to_mask(inc) for inc in h.incidence]
    all_targets = (1 << h.n) - 1
    # holders[c]: mask of target vertices whose star contains color c
    holders = [0] * h.m
    for w, inc in enumerate(h.incidence):
        for c in inc:
            holders[c] |= 1 << w
    order = _edge_order(g)
    phi = [-1] * g.m
    cand = [all_targets] * g.n
    used = [0] * g.n  # colors used at each source vertex
    nodes = [0]

    def union_of_stars(wmask: int) -> int:
        out = 0
        for w in iter_bits(wmask):
            out |= stars[w]
        return out

    def rec(i: int) -> bool:
        nodes[0] += 1
        if nodes[0] > budget:
            raise SearchInconclusive(f"H-coloring search exceeded budget {budget}")
        if i == len(order):
            return True
        e = order[i]
        a, b = g.edges[e]
        domain = union_of_stars(cand[a]) & union_of_stars(cand[b]) & ~used[a] & ~used[b]
        for c in iter_bits(domain):
            ca, cb = cand[a] & holders[c], cand[b] & holders[c]
            if not ca or not cb:
                continue
            saved = (cand[a], cand[b], used[a], used[b])
            cand[a], cand[b] = ca, cb
            used[a] |= 1 << c
            used[b] |= 1 << c
            phi[e] = c
            if rec(i + 1):
                return True
            cand[a], cand[b], used[a], used[b] = saved
            phi[e] = -1
        return False

    if not rec(0):
        return None
    col = HColoring(g, h, tuple(phi))
    assert verify_hcoloring(col).valid
    return col


def compose(outer: HColoring, inner: HColoring) -> HColoring:
    """Given an H-coloring of G and a K-coloring of H, the induced K-coloring of G."""
    if outer.target != inner.source:
        raise ValueError("outer coloring's target must be inner coloring's source")
    return HColoring(outer.source, inner.target, tuple(inner.phi[c] for c in outer.phi))


def identity_coloring(g: Multigraph) -> HColoring:
    return HColoring(g, g, tuple(g.edge_ids))


# -- P10 fixture -----------------------------------------------------------------------

def nine_circuit_avoiding(z: int) -> int:
    """The lexicographically smallest 9-circuit of P10 missing vertex ``z`` (as a mask)."""
    p10 = generate("P10")
    star = p10.star_masks[z]
    circuits = [s for s in even_subgraph_masks(p10) if popcount(s) == 9 and not s & star]
    return min(circuits, key=lambda s: sorted(iter_bits(s)))


def build_p10_fixture() -> dict:
    """For every vertex z of P10: a 9-circuit avoiding z and a 5-CDC containing it."""
    p10 = generate("P10")
    entries = {}
    for z in range(p10.n):
        c = nine_circuit_avoiding(z)
        cdc = five_cdc(p10, c0=c)
        if cdc is None:
            raise AssertionError(f"no 5-CDC of P10 contains the 9-circuit avoiding {z}")
        members = [sorted(s.edges) for s in cdc.members]
        members.sort(key=lambda s: s != sorted(iter_bits(c)))  # circuit first
        entries[str(z)] = {"circuit": sorted(iter_bits(c)), "cdc": members}
    return {"graph": "P10", "host_hash": p10.host_hash(), "entries": entries}


def write_p10_fixture(path) -> None:
    data = build_p10_fixture()
    lines = ["{", f'  "graph": "{data["graph"]}",', f'  "host_hash": "{data["host_hash"]}",', '  "entries": {']
    keys = sorted(data["entries"], key=int)
    for i, z in enumerate(keys):
        entry = data["entries"][z]
        members = ",\n        ".join(json.dumps(m) for m in entry["cdc"])
        tail = "," if i < len(keys) - 1 else ""
        lines.append(f'    "{z}": {{"circuit": {json.dumps(entry["circuit"])},')
        lines.append(f'      "cdc": [{members}]}}{tail}')
    lines += ["  }", "}"]
    Path(path).write_text("\n".join(lines) + "\n")


def _fixture_path() -> Path:
    env = os.environ.get(FIXTURE_ENV)
    if env:
        path = Path(env)
        return path / "p10_cdc.json" if path.is_dir() else path
    return DEFAULT_FIXTURE


@lru_cache(maxsize=None)
def _load_fixture(path: str) -> dict:
    p = Path(path)
    if p.exists():
        data = json.loads(p.read_text())
    else:
        data = build_p10_fixture()
    p10 = generate("P10")
    if data.get("host_hash") != p10.host_hash():
        raise ValueError(f"fixture {path} was built for a different P10 labeling")
    for z, entry in data["entries"].items():
        cdc = FiveCDC(tuple(EvenSubgraph(frozenset(s)) for s in entry["cdc"]))
        if not verify_cover(p10, cdc).valid or sorted(entry["cdc"][0]) != sorted(entry["circuit"]):
            raise ValueError(f"fixture entry for z={z} is not a valid 5-CDC led by its circuit")
        if any(int(z) in p10.edges[e] for e in entry["circuit"]) or len(entry["circuit"]) != 9:
            raise ValueError(f"fixture circuit for z={z} is not a 9-circuit avoiding z")
    return data


def p10_cdc_with_circuit(z: int) -> tuple[int, list[int]]:
    """(circuit mask, five member masks with the circuit first) for the avoided vertex z."""
    data = _load_fixture(str(_fixture_path()))
    entry = data["entries"][str(z)]
    return to_mask(entry["circuit"]), [to_mask(s) for s in entry["cdc"]]


# -- transform --------------------------------------------------------------------------

def petersen_coloring_to_cdc(g: Multigraph, f: HColoring) -> FiveCDC:
    """Pull a 5-CDC of P10 back through a Petersen coloring.

    The P10 vertex z with the fewest preimages (smallest index on ties) is
    avoided by a 9-circuit C that belongs to a 5-CDC of P10; pulling every
    member back gives a 5-CDC of ``g`` whose first member f^-1(C) has at least
    9|V(g)|/10 = 3|E(g)|/5 edges.
    """
    if f.source != g:
        raise ValueError("coloring is not of this graph")
    if f.target != generate("P10"):
        raise ValueError("target must be the catalog P10 labeling")
    report = verify_hcoloring(f)
    if not report.valid:
        raise ValueError(f"invalid Petersen coloring: {report.message}")
    counts = [0] * 10
    for w in report.vertex_map:
        counts[w] += 1
    z = min(range(10), key=lambda w: (counts[w], w))
    circuit, members = p10_cdc_with_circuit(z)
    pulled = []
    for s in members:
        pulled.append(to_mask(e for e in g.edge_ids if (s >> f.phi[e]) & 1))
    first = pulled[0]
    rest = _order_members(pulled[1:])
    cdc = FiveCDC((EvenSubgraph(from_mask(first)),) + rest)
    check = verify_cover(g, cdc)
    if not check.valid:
        raise ValueError(f"pulled-back cover failed verification: {check.message}")
    if 5 * len(cdc.c0.edges) < 3 * g.m:
        raise AssertionError("pulled-back circuit is smaller than 3/5 |E|")
    return cdc
