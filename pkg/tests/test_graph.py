import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import from_nx
from lovaszcheck.graph import (
    Graph, Graph6Error, Graph6ByteError, Graph6HeaderError, Graph6SizeError, Graph6TruncatedError,
    bfs_levels, complete_graph, cycle_graph, delete_vertices, distance_invariants, empty_graph,
    girth, is_connected, parse_graph6, path_graph, petersen_graph, write_graph6,
)


@st.composite
def graphs(draw, max_n=40):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=3 * n)) if pairs else []
    return Graph.from_edges(n, chosen)


def test_graph6_small_examples():
    g = parse_graph6("A?")
    assert (g.n, g.m) == (2, 0)
    g = parse_graph6("A_")
    assert (g.n, g.edges) == (2, ((0, 1),))
    assert write_graph6(complete_graph(2)) == "A_"
    assert write_graph6(empty_graph(2)) == "A?"


def test_graph6_petersen_matches_networkx():
    g = parse_graph6("IsP@OkWHG")
    assert (g.n, g.m, g.regular_degree(), girth(g)) == (10, 15, 3, 5)
    assert nx.is_isomorphic(nx.Graph(list(g.edges)), nx.petersen_graph())


def test_graph6_against_networkx_encoder():
    for seed in range(30):
        h = nx.gnp_random_graph(random.Random(seed).randint(1, 70), 0.2, seed=seed)
        text = nx.to_graph6_bytes(h, header=False).decode().strip()
        g = parse_graph6(text)
        assert set(g.edges) == {(min(u, v), max(u, v)) for u, v in h.edges()}
        assert write_graph6(g) == text


def test_graph6_header_and_long_form():
    g = parse_graph6(">>graph6<<A_")
    assert g.edges == ((0, 1),)
    big = cycle_graph(70)
    text = write_graph6(big)
    assert text[0] == "~"
    assert parse_graph6(text) == big
    assert write_graph6(big, header=True).startswith(">>graph6<<")


def test_graph6_biggs_smith_round_trip(bs):
    assert parse_graph6(write_graph6(bs.graph)) == bs.graph


@pytest.mark.parametrize("text,kind,offset", [
    ("", Graph6HeaderError, 0),
    ("A", Graph6TruncatedError, 1),
    ("A_?", Graph6TruncatedError, 2),
    ("A\x7f", Graph6ByteError, 1),
    ("I sP@OkWH", Graph6ByteError, 1),
])
def test_graph6_errors_carry_offset(text, kind, offset):
    with pytest.raises(kind) as info:
        parse_graph6(text)
    assert isinstance(info.value, Graph6Error)
    assert info.value.offset == offset


def test_graph6_cap():
    with pytest.raises(Graph6SizeError):
        parse_graph6(write_graph6(cycle_graph(20)), cap=10)


@settings(max_examples=80, deadline=None)
@given(graphs())
def test_graph6_round_trip(g):
    text = write_graph6(g)
    assert parse_graph6(text) == g
    assert write_graph6(parse_graph6(">>graph6<<" + text)) == text


def test_from_edges_rejects_bad_input():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])


def test_bfs_levels_examples(bs):
    lv = bfs_levels(path_graph(3), 0)
    assert lv.level_sizes() == [1, 1, 1]
    for root in (0, 50, 101):
        assert bfs_levels(bs.graph, root).level_sizes() == [1, 3, 6, 12, 24, 24, 24, 8]
    assert bs.d("4c", "8c") == 2


@settings(max_examples=60, deadline=None)
@given(graphs(), st.data())
def test_bfs_levels_properties(g, data):
    if g.n == 0:
        return
    root = data.draw(st.integers(0, g.n - 1))
    lv = bfs_levels(g, root)
    reach = set(nx.node_connected_component(_nx(g), root))
    assert sum(lv.level_sizes()) == len(reach)
    for u, v in g.edges:
        if u in reach:
            assert abs(lv.dist[u] - lv.dist[v]) <= 1


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def test_biggs_smith_middle_levels_are_matchings(bs):
    g = bs.graph
    for root in range(g.n):
        lv = bfs_levels(g, root)
        for i in (4, 5, 6):
            level = set(lv.levels[i])
            inside = [(u, v) for u, v in g.edges if u in level and v in level]
            assert len(inside) == 12
            assert len({w for e in inside for w in e}) == 24


def test_distance_invariants_examples(bs):
    inv = distance_invariants(bs.graph)
    assert (inv.regular_degree, inv.girth, inv.diameter) == (3, 9, 7)
    assert inv.intersection_array == ((3, 2, 2, 2, 1, 1, 1), (1, 1, 1, 1, 1, 1, 3))
    inv = distance_invariants(petersen_graph())
    assert (inv.regular_degree, inv.girth, inv.diameter) == (3, 5, 2)
    assert inv.intersection_array == ((3, 2), (1, 1))
    inv = distance_invariants(cycle_graph(6))
    assert (inv.regular_degree, inv.girth, inv.diameter) == (2, 6, 3)
    assert inv.intersection_array == ((2, 1, 1), (1, 1, 2))


def test_distance_invariants_non_regular():
    inv = distance_invariants(from_nx(nx.frucht_graph()))
    assert inv.intersection_array is None
    assert inv.as_dict()["girth"] == 3


def test_girth_against_networkx():
    for seed in range(20):
        h = nx.random_regular_graph(3, 16, seed=seed)
        assert girth(from_nx(h)) == nx.girth(h)


@settings(max_examples=30, deadline=None)
@given(st.randoms(use_true_random=False))
def test_distance_invariants_relabel_invariant(rnd):
    g = petersen_graph()
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert distance_invariants(g.relabel(perm)) == distance_invariants(g)


def test_distance_invariants_under_automorphisms(bs, bs_group):
    base = distance_invariants(bs.graph)
    for gen in bs_group.generators:
        assert distance_invariants(bs.graph.relabel(gen)) == base


def test_delete_vertices(bs):
    sub, old = delete_vertices(bs.graph, bs.idx("11a", "12a", "13a"))
    assert sub.n == 99 and len(old) == 99
    k4 = complete_graph(4)
    assert delete_vertices(k4, [])[0] == k4
    sub, old = delete_vertices(k4, [0, 1])
    assert sub == complete_graph(2) and old == [2, 3]
    with pytest.raises(ValueError):
        delete_vertices(k4, [7])


def test_is_connected():
    assert is_connected(cycle_graph(5))
    assert not is_connected(empty_graph(2))
