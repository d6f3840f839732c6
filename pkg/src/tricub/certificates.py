"""JSON persistence and replay of certificates.

Every certificate is stored as ``{"type", "host_hash", "members", ...}``
where members are lists of edge ids of the host (or of the host expanded at
``witness_u`` for parameter certificates).
"""

from __future__ import annotations

import json
from typing import Union

from .covers import CycleCover, FiveCDC, FourCoverCertificate, ParityFamily, verify_cover
from .graph import Multigraph, is_even_mask, is_parity_mask, is_perfect_matching_mask
from .hcoloring import HColoring, verify_hcoloring
from .matching import EvenSubgraph, Matching, ParitySubgraph
from .params import ParamCertificate, verify_param_certificate
from .structure import AttachResult, ExpansionResult

AnyCertificate = Union[
    Matching, ParitySubgraph, EvenSubgraph, CycleCover, FiveCDC, FourCoverCertificate,
    ParityFamily, HColoring, ParamCertificate,
]


def _edges(s) -> list[int]:
    return sorted(s.edges)


def to_json(g: Multigraph, cert: AnyCertificate) -> dict:
    data: dict = {"host_hash": g.host_hash()}
    if isinstance(cert, Matching):
        data.update(type="matching", members=[_edges(cert)])
    elif isinstance(cert, ParitySubgraph):
        data.update(type="parity_subgraph", members=[_edges(cert)])
    elif isinstance(cert, EvenSubgraph):
        data.update(type="even_subgraph", members=[_edges(cert)])
    elif isinstance(cert, FiveCDC):
        data.update(type="five_cdc", members=[_edges(s) for s in cert.members])
    elif isinstance(cert, CycleCover):
        data.update(type="cycle_cover", members=[_edges(s) for s in cert.members])
    elif isinstance(cert, FourCoverCertificate):
        data.update(type="four_pm_cover", members=[_edges(s) for s in cert.matchings])
    elif isinstance(cert, ParityFamily):
        data.update(type="parity_family", members=[_edges(s) for s in cert.members])
    elif isinstance(cert, HColoring):
        data.update(
            type="hcoloring",
            members=[list(cert.phi)],
            target_hash=cert.target.host_hash(),
            target={"n": cert.target.n, "edges": [list(e) for e in cert.target.edges]},
        )
    elif isinstance(cert, ParamCertificate):
        if cert.witness is None:
            members = []
        elif isinstance(cert.witness, Matching):
            members = [_edges(cert.witness)]
        else:
            members = [_edges(s) for s in cert.witness.matchings]
        data.update(
            type=f"param_{cert.kind}",
            members=members,
            value=cert.value,
            witness_u=sorted(cert.witness_u),
            exact=cert.exact,
            lower_bound=cert.lower_bound,
        )
    else:
        raise TypeError(f"unsupported certificate {type(cert).__name__}")
    return data


def dumps(g: Multigraph, cert: AnyCertificate) -> str:
    return json.dumps(to_json(g, cert), sort_keys=True)


def from_json(g: Multigraph, data: dict) -> AnyCertificate:
    kind = data.get("type")
    members = [frozenset(int(e) for e in s) for s in data.get("members", [])]
    if kind == "matching":
        return Matching(members[0])
    if kind == "parity_subgraph":
        return ParitySubgraph.from_edges(g, members[0])
    if kind == "even_subgraph":
        return EvenSubgraph(members[0])
    if kind == "five_cdc":
        return FiveCDC(tuple(EvenSubgraph(s) for s in members))
    if kind == "cycle_cover":
        return CycleCover(tuple(EvenSubgraph(s) for s in members))
    if kind == "four_pm_cover":
        return FourCoverCertificate(tuple(Matching(s) for s in members))
    if kind == "parity_family":
        fam = tuple(ParitySubgraph.from_edges(g, s) for s in members)
        depth = [0] * g.m
        for s in members:
            for e in s:
                if 0 <= e < g.m:
                    depth[e] += 1
        return ParityFamily(fam, max(depth, default=0))
    if kind == "hcoloring":
        t = data["target"]
        target = Multigraph(int(t["n"]), tuple(tuple(e) for e in t["edges"]))
        return HColoring(g, target, tuple(int(x) for x in data["members"][0]))
    if kind in ("param_t", "param_T"):
        if not members:
            witness = None
        elif kind == "param_t":
            witness = Matching(members[0])
        else:
            witness = FourCoverCertificate(tuple(Matching(s) for s in members))
        return ParamCertificate(
            kind[len("param_"):], data.get("value"), frozenset(data.get("witness_u", [])), witness,
            bool(data.get("exact")), int(data.get("lower_bound", 0)),
        )
    raise ValueError(f"unknown certificate type {kind!r}")


def verify(g: Multigraph, data: dict) -> tuple[bool, str]:
    """Replay a stored certificate against ``g`` from scratch."""
    if data.get("host_hash") != g.host_hash():
        return False, "certificate was issued for a different graph"
    try:
        cert = from_json(g, data)
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        return False, f"malformed certificate: {exc}"
    if any(e < 0 or e >= g.m for s in data.get("members", []) for e in s) and data["type"] not in (
        "hcoloring", "param_t", "param_T"
    ):
        return False, "certificate names an edge outside the graph"
    if isinstance(cert, Matching):
        ok = is_perfect_matching_mask(g, cert.mask)
        return ok, "ok" if ok else "not a perfect matching"
    if isinstance(cert, ParitySubgraph):
        ok = is_parity_mask(g, cert.mask)
        return ok, "ok" if ok else "not a parity subgraph"
    if isinstance(cert, EvenSubgraph):
        ok = is_even_mask(g, cert.mask)
        return ok, "ok" if ok else "not an even subgraph"
    if isinstance(cert, HColoring):
        if "target_hash" in data and data["target_hash"] != cert.target.host_hash():
            return False, "target graph does not match its hash"
        rep = verify_hcoloring(cert)
        return rep.valid, rep.message
    if isinstance(cert, ParamCertificate):
        ok = verify_param_certificate(g, cert)
        return ok, "ok" if ok else f"{cert.kind} witness does not replay"
    rep = verify_cover(g, cert)
    return rep.valid, rep.message


# -- surgery sidecars -----------------------------------------------------------------------

def surgery_sidecar(source: Multigraph, result: Union[ExpansionResult, AttachResult]) -> dict:
    """The maps recorded by an expansion or attachment, keyed by source and result hashes.

    The result graph itself is written through the ordinary graph formats.
    """
    if not isinstance(result, (ExpansionResult, AttachResult)):
        raise TypeError(f"unsupported surgery result {type(result).__name__}")
    data = {"source_hash": source.host_hash(), "result_hash": result.graph.host_hash()}
    if isinstance(result, ExpansionResult):
        data.update(
            type="expansion",
            expanded=sorted(result.expanded),
            triangles={
                str(u): {"corners": list(c), "edges": list(t), "incidence": list(result.source_incidence[u])}
                for u, (c, t) in sorted(result.triangle_of.items())
            },
        )
    else:
        data.update(
            type="attachment",
            gadget=result.gadget,
            subdivided=sorted(result.subdivided),
            roots={
                str(e): {
                    "root": a.root, "split_edge": a.split_edge, "bridge": a.bridge,
                    "vertices": list(a.vertices), "edges": list(a.edges),
                }
                for e, a in sorted(result.root_of.items())
            },
        )
    return data


def check_sidecar(source: Multigraph, result_graph: Multigraph, data: dict) -> tuple[bool, str]:
    """Redo the recorded surgery on ``source`` and compare with ``result_graph`` and the maps."""
    from .structure import expand_vertices, subdivide_attach

    if data.get("source_hash") != source.host_hash() or data.get("result_hash") != result_graph.host_hash():
        return False, "hash mismatch"
    if data.get("type") == "expansion":
        redo = expand_vertices(source, data.get("expanded", []))
    elif data.get("type") == "attachment":
        redo = subdivide_attach(source, data.get("subdivided", []), data.get("gadget", "W"))
    else:
        return False, f"unknown sidecar type {data.get('type')!r}"
    if redo.graph.edges != result_graph.edges or surgery_sidecar(source, redo) != data:
        return False, "recorded maps do not match the surgery"
    return True, "ok"
