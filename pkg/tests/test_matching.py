from itertools import combinations

import pytest

from tricub.generators import gadget, generate, random_cubic
from tricub.graph import Multigraph, is_even_mask, is_perfect_matching_mask, to_mask
from tricub.matching import (
    ORACLE_MAX_EDGES,
    Matching,
    ParitySubgraph,
    enumerate_perfect_matchings,
    find_perfect_matching,
    lift_parity_subgraph,
    matching_avoiding,
    max_even_subgraph,
    min_parity_subgraph,
    min_t_join,
    transfer_matching,
    two_factor,
)
from tricub.structure import expand_vertices, subdivide_attach

from oracles import degrees_of, min_parity_size, perfect_matchings


def test_find_perfect_matching_catalog():
    k4 = generate("K4")
    m = find_perfect_matching(k4)
    assert len(m.edges) == 2 and m.is_perfect(k4)
    assert find_perfect_matching(generate("S10")) is None
    p10 = generate("P10")
    m = find_perfect_matching(p10)
    assert len(m.edges) == 5 and m.is_perfect(p10)


def test_find_perfect_matching_deterministic():
    g = generate("P12")
    assert find_perfect_matching(g) == find_perfect_matching(g)


@pytest.mark.parametrize("name, count", [("K4", 3), ("P10", 6), ("theta", 3), ("K33", 6), ("P12", 8)])
def test_perfect_matching_counts(name, count):
    g = generate(name)
    found = enumerate_perfect_matchings(g)
    assert len(found) == count
    assert {m.edges for m in found} == set(perfect_matchings(g))


def test_enumeration_limit():
    assert len(enumerate_perfect_matchings(generate("P10"), limit=4)) == 4


def test_enumeration_matches_brute_force():
    for seed in range(20):
        g = random_cubic(8, seed=seed)
        assert {m.edges for m in enumerate_perfect_matchings(g)} == set(perfect_matchings(g))


def test_matching_avoiding_examples():
    p10 = generate("P10")
    for e1, e2 in combinations(p10.edge_ids, 2):
        m = matching_avoiding(p10, e1, e2)
        assert m is not None and m.is_perfect(p10)
        assert e1 not in m.edges and e2 not in m.edges
    k4 = generate("K4")
    # (0,1) and (2,3) are disjoint; the other two matchings remain
    m = matching_avoiding(k4, 0, 5)
    assert m.is_perfect(k4) and not {0, 5} & m.edges
    theta = generate("theta")
    assert matching_avoiding(theta, 0, 1).edges == frozenset({2})


def test_two_factor_cubic():
    k4 = generate("K4")
    f = two_factor(k4)
    assert len(f) == 4 and all(d == 2 for d in degrees_of(k4, f))
    p10 = generate("P10")
    f = two_factor(p10)
    assert len(f) == 10 and all(d == 2 for d in degrees_of(p10, f))
    # the complement of a perfect matching of the Petersen graph is two 5-circuits
    comps = [c for c in p10.components(to_mask(f))]
    assert sorted(len(c) for c in comps) == [5, 5]


def _two_regular_spanning(g):
    return {
        frozenset(s)
        for r in range(g.m + 1)
        for s in combinations(g.edge_ids, r)
        if all(d == 2 for d in degrees_of(g, s))
    }


def test_two_factor_w():
    w = gadget("W")
    options = _two_regular_spanning(w)
    # one triangle through each copy of the doubled edge
    assert options == {frozenset({0, 1, 2}), frozenset({0, 1, 3})}
    assert two_factor(w) in options


def test_two_factor_bad_profile():
    with pytest.raises(ValueError):
        two_factor(Multigraph(4, ((0, 1), (1, 2), (2, 3))))


@pytest.mark.parametrize(
    "name, size, v3",
    [("K4", 2, 0), ("S10", 6, 1), ("P10", 5, 0), ("S16", 9, 1), ("theta", 1, 0), ("W", None, None)],
)
def test_min_parity_examples(name, size, v3):
    g = generate(name)
    if size is None:
        with pytest.raises(Exception):
            min_parity_subgraph(g)
        return
    for backend in ("matching", "oracle"):
        j = min_parity_subgraph(g, backend)
        assert len(j.edges) == size and len(j.v3) == v3
        assert 2 * len(j.edges) == g.n + 2 * len(j.v3)


def test_min_parity_s10_forces_center():
    g = generate("S10")
    j = min_parity_subgraph(g)
    assert j.v3 == frozenset({0})


def test_min_parity_against_brute_force():
    for seed in range(25):
        g = random_cubic(8, seed=seed)
        assert len(min_parity_subgraph(g).edges) == min_parity_size(g)


def test_min_parity_lexicographic_tie_break():
    k4 = generate("K4")
    # matchings of K4: {0,5}, {1,4}, {2,3}; lexicographically smallest is {0,5}
    assert min_parity_subgraph(k4).edges == frozenset({0, 5})
    assert min_parity_subgraph(k4, "oracle").edges == frozenset({0, 5})


def test_oracle_cap():
    g = random_cubic(18, seed=0)
    assert g.m > ORACLE_MAX_EDGES
    with pytest.raises(ValueError, match="capped"):
        min_parity_subgraph(g, "oracle")


def test_matching_backend_on_larger_graphs():
    for seed in range(5):
        g = random_cubic(30, seed=seed)
        j = min_parity_subgraph(g)
        assert all(d % 2 == 1 for d in degrees_of(g, j.edges))
        assert 2 * len(j.edges) == g.n + 2 * len(j.v3)


def test_min_t_join_small():
    g = generate("K4")
    mask = min_t_join(g, {0, 1})
    assert mask == to_mask({0})
    assert min_t_join(g, set()) == 0


def test_max_even_subgraph():
    assert len(max_even_subgraph(generate("S10")).edges) == 9
    assert len(max_even_subgraph(generate("S16")).edges) == 15
    k4 = generate("K4")
    c = max_even_subgraph(k4)
    assert len(c.edges) == 4 and is_even_mask(k4, c.mask)


def test_parity_and_even_types():
    g = generate("P10")
    j = min_parity_subgraph(g)
    c = j.complement(g)
    assert c.is_even(g) and len(c) == g.m - len(j.edges)
    assert ParitySubgraph.from_edges(g, j.edges) == j


def test_lift_parity_subgraph():
    g = generate("S10")
    j = min_parity_subgraph(g)
    exp, m = lift_parity_subgraph(g, j)
    assert exp.expanded == j.v3
    assert is_perfect_matching_mask(exp.graph, m.mask)


def test_transfer_theta_all_edges():
    theta = generate("theta")
    attach = subdivide_attach(theta, {0, 1, 2}, "W")
    tr = transfer_matching(theta, attach, Matching(frozenset({0})))
    assert len(tr.u) == 1
    assert is_perfect_matching_mask(tr.expansion.graph, tr.matching.mask)


def test_transfer_empty_attach():
    g = generate("K4")
    m = find_perfect_matching(g)
    tr = transfer_matching(g, subdivide_attach(g, set(), "W"), m)
    assert tr.u == frozenset() and tr.matching == m


def test_transfer_avoiding_attached_edge():
    g = generate("K4")
    attach = subdivide_attach(g, {0}, "W")
    m = matching_avoiding(g, 0, 0)
    tr = transfer_matching(g, attach, m)
    assert tr.u == frozenset()
    assert is_perfect_matching_mask(attach.graph, tr.matching.mask)


def test_transfer_rejects_non_perfect():
    g = generate("K4")
    with pytest.raises(ValueError):
        transfer_matching(g, subdivide_attach(g, {0}, "W"), Matching(frozenset({0})))


@pytest.mark.parametrize("gad", ["W", "Wprime"])
def test_transfer_random(gad):
    for seed in range(15):
        g = random_cubic(8, seed=seed)
        e0 = {e for e in g.edge_ids if (e * 7 + seed) % 3 == 0}
        attach = subdivide_attach(g, e0, gad)
        for m in enumerate_perfect_matchings(g, limit=3):
            tr = transfer_matching(g, attach, m)
            assert len(tr.u) == len(e0 & m.edges)
            assert is_perfect_matching_mask(expand_vertices(attach.graph, tr.u).graph, tr.matching.mask)
