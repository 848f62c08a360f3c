import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bkgraph.generators import complete, cycle, enumerate_all, path
from bkgraph.graph import (
    Coloring,
    Graph,
    Graph6Error,
    GraphError,
    complement,
    delete_vertex,
    from_graph6,
    induced_subgraph,
    is_clique,
    is_connected,
    is_proper,
    is_proper_partial,
    is_stable,
    max_degree,
    read_graph6_lines,
    to_graph6,
)

import oracles


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for j in range(n) for i in range(j)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, c in zip(pairs, chosen) if c])


def random_graph(rng, n, p=None):
    p = rng.random() if p is None else p
    return Graph.from_edges(n, [(i, j) for j in range(n) for i in range(j) if rng.random() < p])


# ---------------------------------------------------------------- structure


def test_add_edge_is_symmetric_and_idempotent():
    g = Graph(4)
    g.add_edge(0, 3).add_edge(3, 0)
    assert g.has_edge(0, 3) and g.has_edge(3, 0)
    assert g.m == 1
    assert g.degree(0) == g.degree(3) == 1


def test_self_loop_and_range_rejected():
    g = Graph(3)
    with pytest.raises(GraphError):
        g.add_edge(1, 1)
    with pytest.raises(GraphError):
        g.add_edge(0, 3)
    with pytest.raises(GraphError):
        Graph(65)


def test_remove_edge():
    g = complete(4)
    g.remove_edge(1, 2)
    assert not g.has_edge(2, 1)
    assert g.m == 5


def test_max_degree_examples():
    assert max_degree(Graph(0)) == 0
    assert max_degree(complete(10)) == 9
    assert max_degree(cycle(7)) == 2


def test_clique_and_stable_predicates():
    g = cycle(5)
    assert is_clique(g, [0, 1])
    assert not is_clique(g, [0, 1, 2])
    assert is_stable(g, [0, 2])
    assert not is_stable(g, [0, 1])
    assert is_clique(g, []) and is_stable(g, [])


def test_induced_subgraph_relabels_ascending():
    g = cycle(6)
    h = induced_subgraph(g, [5, 0, 1])
    # 0 -> 0, 1 -> 1, 5 -> 2
    assert sorted(h.edges()) == [(0, 1), (0, 2)]


def test_induced_subgraph_composition():
    rng = random.Random(5)
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 14))
        s = sorted(rng.sample(range(g.n), rng.randint(0, g.n)))
        t_local = sorted(rng.sample(range(len(s)), rng.randint(0, len(s))))
        once = induced_subgraph(g, [s[i] for i in t_local])
        twice = induced_subgraph(induced_subgraph(g, s), t_local)
        assert once == twice


def test_delete_vertex_and_complement():
    g = path(4)
    assert sorted(delete_vertex(g, 1).edges()) == [(1, 2)]
    c = complement(g)
    assert c.m == 6 - 3
    assert complement(c) == g


def test_is_connected():
    assert is_connected(Graph(0)) and is_connected(Graph(1))
    assert not is_connected(Graph(2))
    assert is_connected(path(5))


@given(graphs())
def test_complement_degree_identity(g):
    c = complement(g)
    for v in range(g.n):
        assert g.degree(v) + c.degree(v) == g.n - 1


# ---------------------------------------------------------------- colorings


def test_is_proper_examples():
    g = cycle(5)
    assert is_proper(g, Coloring((1, 2, 1, 2, 3), 3))
    assert not is_proper(g, Coloring((1, 2, 1, 2, 1), 3))
    # partial colorings are never proper, but can be partially proper
    partial = Coloring((1, 2, 0, 2, 3), 3)
    assert not is_proper(g, partial)
    assert is_proper_partial(g, partial)


def test_coloring_validation_and_relabel():
    with pytest.raises(ValueError):
        Coloring((1, 4), 3)
    c = Coloring((1, 2, 3, 3), 3)
    assert c.relabel({3: 1, 1: 3}).colors == (3, 2, 1, 1)
    assert c.class_mask(3) == 0b1100
    assert c.used == {1, 2, 3}


# ---------------------------------------------------------------- graph6


@pytest.mark.parametrize(
    "text, n, edges",
    [
        ("@", 1, []),
        ("?", 0, []),
        ("A_", 2, [(0, 1)]),
        ("Bw", 3, [(0, 1), (0, 2), (1, 2)]),
        ("C~", 4, [(i, j) for j in range(4) for i in range(j)]),
        ("Dhc", 5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]),
    ],
)
def test_graph6_known_strings(text, n, edges):
    g = from_graph6(text)
    assert g.n == n
    assert oracles.edge_set(g) == {frozenset(e) for e in edges}
    assert to_graph6(g).decode() == text
    assert oracles.graph6_encode(n, edges) == text


def test_graph6_matches_independent_encoder():
    rng = random.Random(11)
    for _ in range(500):
        g = random_graph(rng, rng.randint(0, 62))
        assert to_graph6(g).decode() == oracles.graph6_encode(g.n, g.edges())


def test_graph6_roundtrip_enumerated():
    for n in range(8):
        for g in enumerate_all(n):
            assert from_graph6(to_graph6(g)) == g


def test_graph6_roundtrip_random():
    rng = random.Random(62)
    for _ in range(10_000):
        g = random_graph(rng, rng.randint(0, 62))
        assert from_graph6(to_graph6(g)) == g


def test_graph6_header_and_newline():
    assert from_graph6(">>graph6<<C~\n") == complete(4)
    assert from_graph6(b"C~\r\n") == complete(4)


def test_graph6_long_header_for_64_vertices():
    body = "?" * (64 * 63 // 2 // 6)
    g = from_graph6("~?@?" + body)
    assert g.n == 64 and g.m == 0


@pytest.mark.parametrize(
    "bad, fragment",
    [
        ("", "empty"),
        ("C", "truncated"),
        ("C~~", "trailing"),
        ("C\x7f", "range"),
        ("Dhd", "padding"),
        ("~?A?", "exceeds"),
        ("é", "ASCII"),
    ],
)
def test_graph6_errors(bad, fragment):
    with pytest.raises(Graph6Error, match=fragment):
        from_graph6(bad)


def test_to_graph6_rejects_large():
    with pytest.raises(GraphError):
        to_graph6(Graph(63))


def test_read_lines_reports_line_number():
    lines = ["# corpus", "C~", "", "Dhc", "Dh"]
    with pytest.raises(Graph6Error, match="line 5"):
        list(read_graph6_lines(lines))
    got = list(read_graph6_lines(lines[:4]))
    assert [ln for ln, _ in got] == [2, 4]


@settings(max_examples=200)
@given(graphs(max_n=40))
def test_graph6_roundtrip_property(g):
    assert from_graph6(to_graph6(g)) == g
