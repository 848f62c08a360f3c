"""The compiled kernels and the pure-Python fallback must agree exactly."""

import random

import pytest

from bkgraph import _core, _pykernels
from bkgraph.generators import cycle, path
from bkgraph.graph import Graph, is_clique
from bkgraph.recognizers import APPLE, P6, TORCH

compiled = pytest.importorskip("bkgraph._kernels", reason="compiled kernels not built")


def random_graph(rng, n, p):
    return Graph.from_edges(n, [(i, j) for j in range(n) for i in range(j) if rng.random() < p])


def test_backend_selection():
    assert _core.BACKEND in ("compiled", "python")
    assert _core.FOUND == _pykernels.FOUND == compiled.FOUND
    assert _core.TIMEOUT == _pykernels.TIMEOUT == compiled.TIMEOUT


def test_max_clique_parity():
    rng = random.Random(1)
    for _ in range(300):
        g = random_graph(rng, rng.randint(0, 40), rng.random())
        a = compiled.max_clique(g.adj, g.n)
        b = _pykernels.max_clique(g.adj, g.n)
        assert a.bit_count() == b.bit_count()
        assert is_clique(g, a) and is_clique(g, b)


def test_color_search_parity():
    rng = random.Random(2)
    for _ in range(300):
        g = random_graph(rng, rng.randint(0, 16), rng.random())
        for k in (2, 3, 4, 6):
            assert compiled.color_search(g.adj, g.n, k, 0.0) == _pykernels.color_search(g.adj, g.n, k, 0.0)


def test_find_induced_parity():
    rng = random.Random(3)
    pats = [P6.graph, APPLE.graph, TORCH.graph, cycle(4), path(3)]
    for _ in range(200):
        g = random_graph(rng, rng.randint(0, 20), rng.random())
        req = rng.getrandbits(g.n) & rng.getrandbits(g.n) & rng.getrandbits(g.n) if g.n else 0
        for h in pats:
            assert compiled.find_induced(g.adj, g.n, h.adj, h.n, req) == _pykernels.find_induced(
                g.adj, g.n, h.adj, h.n, req
            )


def test_canonical_code_parity():
    rng = random.Random(4)
    for _ in range(300):
        g = random_graph(rng, rng.randint(0, 11), rng.random())
        assert compiled.canonical_code(g.adj, g.n) == _pykernels.canonical_code(g.adj, g.n)


def test_sixty_four_vertices():
    g = Graph.from_edges(64, [(i, (i + 1) % 64) for i in range(64)])
    for mod in (compiled, _pykernels):
        assert mod.max_clique(g.adj, 64).bit_count() == 2
        status, cols = mod.color_search(g.adj, 64, 2, 0.0)
        assert status == mod.FOUND
        assert all(cols[i] != cols[(i + 1) % 64] for i in range(64))
        assert mod.find_induced(g.adj, 64, P6.graph.adj, 6, 1 << 63) is not None
