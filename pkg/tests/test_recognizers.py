import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bkgraph.generators import apple, complete, cycle, empty, enumerate_all, join, path, torch
from bkgraph.graph import Graph, GraphError, delete_vertex
from bkgraph.recognizers import (
    APPLE,
    C4,
    C5,
    CLAW,
    HOLE_ANY,
    HOLE_ODD,
    P6,
    TORCH,
    C5Extension,
    Pattern,
    classify_c5_extension,
    creates_forbidden,
    find_hole,
    find_induced,
    is_bisimplicial,
    is_class_member,
    is_member,
    parse_pattern,
    recognize,
    witness_is_valid,
)

import oracles

PATTERNS = (P6, C4, C5, APPLE, TORCH, CLAW)


def random_graph(rng, n, p):
    return Graph.from_edges(n, [(i, j) for j in range(n) for i in range(j) if rng.random() < p])


def test_pattern_shapes():
    assert P6.graph.m == 5 and P6.size == 6
    assert sorted(APPLE.graph.edges()) == sorted(apple().edges())
    assert [APPLE.graph.degree(v) for v in range(6)] == [3, 2, 2, 2, 2, 1]
    assert sorted(TORCH.graph.edges()) == sorted(torch().edges())
    assert [TORCH.graph.degree(v) for v in range(6)] == [3, 2, 3, 2, 2, 2]
    assert CLAW.graph.degree(0) == 3


def test_parse_pattern():
    assert parse_pattern("p6").graph == P6.graph
    assert parse_pattern("C5").graph == C5.graph
    assert parse_pattern("apple").name == "APPLE"
    assert parse_pattern("hole_odd") is HOLE_ODD
    for bad in ("p0", "c2", "banana", "c"):
        with pytest.raises(GraphError):
            parse_pattern(bad)


def test_c5_is_free_of_six_vertex_patterns():
    rep = recognize(cycle(5), [P6, APPLE, TORCH])
    assert rep.member
    assert rep.to_dict()["verdicts"] == {"P6": "FREE", "APPLE": "FREE", "TORCH": "FREE"}


def test_witnesses_on_constructions():
    assert find_induced(path(6), P6) == (0, 1, 2, 3, 4, 5)
    assert find_induced(apple(), APPLE) == (0, 1, 2, 3, 4, 5)
    w = find_induced(torch(), TORCH)
    assert witness_is_valid(torch(), TORCH.graph, w)
    assert find_induced(apple(), TORCH) is None
    assert find_induced(torch(), APPLE) is None
    assert find_induced(complete(6), P6) is None


def test_p6_in_longer_path_and_c7():
    assert find_induced(path(8), P6) == (0, 1, 2, 3, 4, 5)
    w = find_induced(cycle(7), P6)
    assert witness_is_valid(cycle(7), P6.graph, w)
    assert find_induced(cycle(6), P6) is None


@pytest.mark.parametrize("n", range(1, 7))
def test_agrees_with_all_tuples_oracle(n):
    for g in enumerate_all(n):
        for p in PATTERNS:
            assert find_induced(g, p) == oracles.induced_copy(g, p.graph), (n, p.name)


def test_agrees_with_oracle_on_random_labeled_graphs():
    rng = random.Random(3)
    for _ in range(60):
        g = random_graph(rng, rng.randint(6, 8), rng.uniform(0.2, 0.8))
        for p in (P6, APPLE, TORCH):
            assert find_induced(g, p) == oracles.induced_copy(g, p.graph)


def test_required_vertices_anchor_the_search():
    g = path(8)
    w = find_induced(g, P6, required=[7])
    assert w == (2, 3, 4, 5, 6, 7)
    assert find_induced(g, P6, required=[0, 7]) is None


def test_class_membership_examples():
    assert is_member(cycle(5))
    assert not is_member(path(6))
    assert not is_member(apple())
    assert not is_member(torch())
    assert is_member(complete(12))
    assert is_class_member(join(complete(8), empty(2))).member


def test_p5_c4_free_graphs_are_members():
    # P5 sits inside P6 and the apple, C4 inside the torch
    p5 = Pattern.path(5)
    for n in range(1, 8):
        for g in enumerate_all(n):
            if find_induced(g, p5) is None and find_induced(g, C4) is None:
                assert is_member(g)


def test_member_count_matches_oracle_at_n6():
    ours = sum(is_member(g) for g in enumerate_all(6))
    ref = sum(
        all(oracles.induced_copy(g, p.graph) is None for p in (P6, APPLE, TORCH))
        for g in enumerate_all(6)
    )
    assert ours == ref
    # only the three forbidden graphs themselves drop out at n = 6
    assert ours == 156 - 3


def test_hereditary_small():
    for n in range(2, 7):
        for g in enumerate_all(n):
            if is_member(g):
                assert all(is_member(delete_vertex(g, v)) for v in range(n))


# ---------------------------------------------------------------- holes


def test_find_hole_examples():
    assert find_hole(cycle(4)) == (0, 1, 2, 3)
    assert find_hole(cycle(4), "odd") is None
    assert len(find_hole(cycle(7), "odd")) == 7
    assert find_hole(complete(6)) is None
    assert find_hole(apple(), "odd") == (0, 1, 2, 3, 4)
    with pytest.raises(GraphError):
        find_hole(cycle(5), "even")


def test_holes_match_oracle():
    rng = random.Random(17)
    for _ in range(80):
        g = random_graph(rng, rng.randint(4, 8), rng.uniform(0.2, 0.6))
        lengths = [L for L in range(4, g.n + 1) if oracles.induced_copy(g, cycle(L)) is not None]
        hole = find_hole(g)
        odd = find_hole(g, "odd")
        assert (hole is None) == (not lengths)
        if hole:
            assert len(hole) == min(lengths)
            assert witness_is_valid(g, cycle(len(hole)), hole)
        odd_lengths = [L for L in lengths if L % 2]
        assert (odd is None) == (not odd_lengths)
        if odd:
            assert len(odd) == min(odd_lengths)


def test_hole_patterns_dispatch():
    assert find_induced(cycle(6), HOLE_ANY) == find_hole(cycle(6))
    assert find_induced(cycle(6), HOLE_ODD) is None


# ---------------------------------------------------------------- C5 extensions and bisimplicial


def test_classify_c5_extension():
    cyc = (0, 1, 2, 3, 4)
    assert classify_c5_extension(apple(), cyc, 5) is C5Extension.APPLE
    assert classify_c5_extension(torch(), cyc, 5) is C5Extension.TORCH
    g = cycle(5)
    g6 = Graph(6, g.adj + [0])
    assert classify_c5_extension(g6, cyc, 5) is C5Extension.NONE
    adj_pair = Graph.from_edges(6, cycle(5).edges() + [(5, 0), (5, 1)])
    assert classify_c5_extension(adj_pair, cyc, 5) is C5Extension.OTHER
    with pytest.raises(GraphError):
        classify_c5_extension(apple(), (0, 1, 2, 3, 5), 4)


def test_is_bisimplicial():
    assert is_bisimplicial(complete(5), 0)
    assert is_bisimplicial(cycle(5), 0)
    assert not is_bisimplicial(Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)]), 0)
    # neighbourhood = C5: its complement is a C5, not bipartite
    wheel = Graph.from_edges(6, cycle(5).edges() + [(5, v) for v in range(5)])
    assert not is_bisimplicial(wheel, 5)


def test_is_bisimplicial_matches_brute_force():
    from itertools import combinations

    rng = random.Random(23)
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 9), rng.uniform(0.3, 0.9))
        v = rng.randrange(g.n)
        nb = g.neighbors(v)
        es = oracles.edge_set(g)

        def clique(s):
            return all(frozenset(p) in es for p in combinations(s, 2))

        ref = any(
            clique([w for i, w in enumerate(nb) if mask >> i & 1])
            and clique([w for i, w in enumerate(nb) if not mask >> i & 1])
            for mask in range(1 << len(nb))
        )
        assert is_bisimplicial(g, v) == ref


# ---------------------------------------------------------------- properties


@st.composite
def member_and_pair(draw):
    n = draw(st.integers(6, 10))
    seed = draw(st.integers(0, 10**6))
    rng = random.Random(seed)
    g = Graph(n)
    for _ in range(3 * n):
        a, b = rng.sample(range(n), 2)
        g.add_edge(a, b)
        if not is_member(g):
            g.remove_edge(a, b)
    a, b = draw(st.sampled_from([(i, j) for j in range(n) for i in range(j)]))
    return g, a, b


@settings(max_examples=60, deadline=None)
@given(member_and_pair())
def test_creates_forbidden_matches_full_recheck(case):
    g, a, b = case
    h = g.copy()
    if h.has_edge(a, b):
        h.remove_edge(a, b)
    else:
        h.add_edge(a, b)
    assert creates_forbidden(h, a, b) == (not is_member(h))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 9))
def test_membership_is_relabel_invariant(seed, n):
    rng = random.Random(seed)
    g = random_graph(rng, n, rng.random())
    perm = list(range(n))
    rng.shuffle(perm)
    h = Graph.from_edges(n, [(perm[a], perm[b]) for a, b in g.edges()])
    assert is_member(g) == is_member(h)
