import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import from_nx, named_small_graphs
from lovaszcheck.autom import (
    SearchBudgetExceeded, automorphism_group, canonical_profile, compose, cycle_notation,
    h_preserving_group, inverse, is_automorphism, letter_action, pair_orbits_by_distance,
    pair_profile, verify_pair_transitivity,
)
from lovaszcheck.graph import complete_graph, cycle_graph, petersen_graph


def _nx_order(g):
    h = nx.Graph(list(g.edges))
    h.add_nodes_from(range(g.n))
    return sum(1 for _ in nx.algorithms.isomorphism.GraphMatcher(h, h).isomorphisms_iter())


@pytest.mark.parametrize("g,order", [(cycle_graph(5), 10), (petersen_graph(), 120),
                                     (complete_graph(4), 24)])
def test_small_group_orders(g, order):
    grp = automorphism_group(g)
    assert grp.order == order
    assert all(is_automorphism(g, p) for p in grp.generators)


def test_group_orders_match_networkx_count():
    for name, g in named_small_graphs().items():
        if g.n <= 20:
            assert automorphism_group(g).order == _nx_order(g), name
    for seed in range(10):
        g = from_nx(nx.random_regular_graph(3, 12, seed=seed))
        assert automorphism_group(g).order == _nx_order(g)


def test_biggs_smith_group(bs, bs_group):
    assert bs_group.order == 2448
    assert len(bs_group.vertex_orbits) == 1 and len(bs_group.vertex_orbits[0]) == 102
    assert len(bs_group.edge_orbits) == 1 and len(bs_group.edge_orbits[0]) == 153
    assert bs_group.is_vertex_transitive and bs_group.is_edge_transitive
    assert pair_orbits_by_distance(bs.graph, bs_group) == {d: 1 for d in range(8)}
    assert all(is_automorphism(bs.graph, p) for p in bs_group.generators)


def test_pair_transitivity(bs, bs_group):
    rep = verify_pair_transitivity(bs.graph, bs_group)
    assert rep.passed
    assert rep.details["unordered_canonical_classes"] == rep.details["unordered_pair_orbits"] == 12


def test_pair_transitivity_six_cycle():
    g = cycle_graph(6)
    rep = verify_pair_transitivity(g, automorphism_group(g))
    assert rep.passed
    opposite = [(e, f) for e, f in combinations(g.edges, 2) if not set(e) & set(f)
                and pair_profile(g, e, f).canonical == canonical_profile((3, 2, 2, 3))]
    assert len(opposite) == 3


def test_pair_transitivity_fails_without_symmetry():
    g = from_nx(nx.frucht_graph())
    assert not verify_pair_transitivity(g, automorphism_group(g)).passed


def test_pair_profile_examples(bs):
    p = pair_profile(bs.graph, tuple(bs.idx("1a", "17a")), tuple(bs.idx("13a", "12a")))
    assert (p.d_ux, p.d_uy, p.d_vx, p.d_vy) == (5, 6, 4, 5)
    p = pair_profile(bs.graph, tuple(bs.idx("2b", "2e")), tuple(bs.idx("8c", "10c")))
    assert (p.d_ux, p.d_uy, p.d_vx, p.d_vy) == (5, 5, 5, 5)
    e = tuple(bs.idx("1a", "2a"))
    assert pair_profile(bs.graph, e, e).canonical == canonical_profile((0, 1, 1, 0))


@settings(max_examples=50, deadline=None)
@given(st.tuples(*[st.integers(0, 9)] * 4))
def test_canonical_profile_is_orbit_minimum(t):
    a, b, c, d = t
    images = {(a, b, c, d), (b, a, d, c), (c, d, a, b), (d, c, b, a),
              (a, c, b, d), (c, a, d, b), (b, d, a, c), (d, b, c, a)}
    canon = canonical_profile(t)
    assert canon == min(images)
    assert all(canonical_profile(x) == canon for x in images)


def test_profile_invariant_under_automorphisms(bs, bs_group):
    rnd = random.Random(3)
    g = bs.graph
    for _ in range(200):
        e, f = rnd.sample(g.edges, 2)
        p = rnd.choice(bs_group.generators)
        pe = tuple(sorted((p[e[0]], p[e[1]])))
        pf = tuple(sorted((p[f[0]], p[f[1]])))
        assert pair_profile(g, e, f).canonical == pair_profile(g, pe, pf).canonical


@settings(max_examples=15, deadline=None)
@given(st.randoms(use_true_random=False))
def test_order_invariant_under_relabeling(rnd):
    for g, order in ((petersen_graph(), 120), (from_nx(nx.heawood_graph()), 336)):
        perm = list(range(g.n))
        rnd.shuffle(perm)
        assert automorphism_group(g.relabel(perm)).order == order


def test_biggs_smith_relabeled(bs):
    perm = list(range(102))
    random.Random(11).shuffle(perm)
    assert automorphism_group(bs.graph.relabel(perm)).order == 2448


def test_h_preserving_group(bs):
    maps = h_preserving_group(bs)
    assert len(maps) == 136 and len(set(maps)) == 136
    for p in maps:
        assert is_automorphism(bs.graph, p)
        hmap = {}
        for v in range(102):
            hmap.setdefault(bs.hset(v), set()).add(bs.hset(p[v]))
        assert all(len(s) == 1 for s in hmap.values())
    assert letter_action(2) == {"a": "c", "b": "d", "c": "b", "d": "a", "e": "f", "f": "e"}
    assert letter_action(4) == {"a": "b", "b": "a", "c": "d", "d": "c", "e": "e", "f": "f"}
    assert letter_action(1) == {t: t for t in "abcdef"}


def test_is_automorphism_examples(bs):
    g = bs.graph
    rot = [bs.index(f"{bs.hset(v) % 17 + 1}{bs.letter(v)}") for v in range(102)]
    assert is_automorphism(g, rot)
    swap = list(range(102))
    a, b = bs.idx("1a", "2a")
    swap[a], swap[b] = b, a
    assert not is_automorphism(g, swap)
    assert is_automorphism(g, list(range(102)))


def test_permutation_helpers():
    p = (1, 2, 0, 3)
    assert compose(p, inverse(p)) == (0, 1, 2, 3)
    assert cycle_notation(p) == "(0 1 2)"
    assert cycle_notation(p, names=lambda v: "abcd"[v]) == "(a b c)"


def test_budget_exceeded(bs):
    with pytest.raises(SearchBudgetExceeded):
        automorphism_group(bs.graph, node_budget=3)
