import json
from pathlib import Path

import networkx as nx
import pytest

from tricub.generators import (
    CATALOG_NAMES,
    DegreeTree,
    caterpillar_tree,
    claw,
    gadget,
    generate,
    generate_from_tree,
    random_cubic,
    simple_cubic_graphs,
)
from tricub.graph import Multigraph, classify
from tricub.structure import decompose

CATALOG_FIXTURE = Path(__file__).resolve().parents[1] / "src" / "tricub" / "data" / "catalog.json"


def iso(a, b):
    return nx.is_isomorphic(a.to_networkx(), b.to_networkx())


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_labelings_are_frozen(name):
    frozen = json.loads(CATALOG_FIXTURE.read_text())[name]
    g = generate(name)
    assert g.n == frozen["n"]
    assert [list(e) for e in g.edges] == frozen["edges"]
    assert g.host_hash() == frozen["host_hash"]


def test_unknown_name():
    with pytest.raises(ValueError, match="unknown graph name"):
        generate("Q7")


def test_petersen():
    g = generate("P10")
    c = classify(g)
    assert (g.n, g.m) == (10, 15)
    assert c.cubic and c.simple and c.bridgeless and c.connected
    assert nx.girth(nx.Graph(g.edges)) == 5
    assert iso(g, Multigraph(10, tuple(nx.petersen_graph().edges())))


def test_s10_shape():
    g = generate("S10")
    assert (g.n, g.m) == (10, 15) and g.is_cubic()
    dec = decompose(g)
    assert len(dec.end_blocks) == 3
    w = gadget("W")
    for idx, root in dec.end_blocks:
        block = dec.blocks[idx]
        verts = dec.block_vertices(g, idx)
        assert len(verts) == 3 and len(block) == 4
        assert root == 0
        sub = Multigraph(g.n, tuple(g.edges[e] for e in sorted(block)))
        relabel = {v: i for i, v in enumerate(sorted(verts))}
        local = Multigraph(3, tuple((relabel[a], relabel[b]) for a, b in sub.edges))
        assert iso(local, w)


def test_w_gadget():
    w = generate("W")
    assert (w.n, w.m) == (3, 4)
    assert sorted(w.degrees()) == [2, 3, 3]
    wp = generate("Wprime")
    assert (wp.n, wp.m) == (5, 7) and wp.is_simple()
    assert sorted(wp.degrees()) == [2, 3, 3, 3, 3]


def test_p12_is_expanded_petersen():
    g = generate("P12")
    assert (g.n, g.m) == (12, 18) and g.is_cubic()
    triangles = [c for c in nx.enumerate_all_cliques(nx.Graph(g.edges)) if len(c) == 3]
    assert len(triangles) == 1


@pytest.mark.parametrize("gad, order", [("W", 10), ("Wprime", 16)])
def test_claw_family(gad, order):
    g = generate_from_tree(claw(), gad)
    assert g.n == order and g.is_cubic()
    assert iso(g, generate("S10" if gad == "W" else "S16"))


def test_k2_tree_with_w():
    g = generate_from_tree(caterpillar_tree(2), "W")
    # two W blocks joined by an edge, built by hand
    by_hand = Multigraph(6, ((0, 1), (0, 2), (0, 3), (2, 3), (2, 3), (1, 4), (1, 5), (4, 5), (4, 5)))
    assert g.n == 6 and g.is_cubic()
    assert iso(g, by_hand)


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10, 12, 20])
def test_caterpillar_counts(n):
    t = caterpillar_tree(n)
    assert t.n == n
    assert t.k1 == n // 2 + 1 and t.k3 == n // 2 - 1
    assert t.k1 - t.k3 == 2
    w = generate_from_tree(t, "W")
    wp = generate_from_tree(t, "Wprime")
    assert w.n == 2 * n + 2 and wp.n == 3 * n + 4
    assert w.is_cubic() and wp.is_cubic()
    if n > 2:
        assert len(decompose(w).end_blocks) == t.k1
        assert len(decompose(wp).end_blocks) == t.k1
        for idx, _ in decompose(wp).end_blocks:
            assert len(decompose(wp).block_vertices(wp, idx)) == 5


def test_degree_tree_rejects_bad_trees():
    with pytest.raises(ValueError):
        DegreeTree(Multigraph(3, ((0, 1), (1, 2))))
    with pytest.raises(ValueError):
        DegreeTree(Multigraph(4, ((0, 1), (1, 2), (2, 0))))
    with pytest.raises(ValueError):
        caterpillar_tree(5)


def test_random_cubic_k4():
    for seed in range(5):
        assert iso(random_cubic(4, simple=True, seed=seed), generate("K4"))


def test_random_cubic_six():
    g = random_cubic(6, simple=True, seed=1)
    assert any(iso(g, h) for h in simple_cubic_graphs(6))
    assert iso(g, generate("K33")) or iso(g, generate("prism"))


def test_random_cubic_deterministic_and_connected():
    for seed in range(20):
        g = random_cubic(12, seed=seed)
        assert g == random_cubic(12, seed=seed)
        assert g.is_cubic() and g.is_connected()
        assert all(u != v for u, v in g.edges)


def test_random_cubic_rejects_odd():
    with pytest.raises(ValueError, match="even"):
        random_cubic(5)


@pytest.mark.parametrize("n, count", [(4, 1), (6, 2), (8, 5)])
def test_simple_cubic_counts(n, count):
    graphs = simple_cubic_graphs(n)
    assert len(graphs) == count
    assert all(g.is_cubic() and g.is_simple() and g.is_connected() for g in graphs)


def test_simple_cubic_count_ten(simple_corpus):
    assert len([g for g in simple_corpus if g.n == 10]) == 19
