"""Graph sources: exhaustive enumeration, named constructions, class sampler."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator

from bkgraph import _core
from bkgraph.graph import Graph, GraphError, max_degree, read_graph6_lines
from bkgraph.recognizers import creates_forbidden, is_member

ENUM_LIMIT = 7
ENUM_LIMIT_OPT_IN = 8


def canonical_code(g: Graph) -> int:
    """Isomorphism-invariant integer code.

    Meant for the enumeration range: the search can still grow quickly on
    large vertex-transitive graphs (about 2 s for C14).
    """
    return _core.canonical_code(g.adj, g.n)


def graph_from_code(n: int, code: int) -> Graph:
    """Inverse of the code layout: column-major pairs, first pair most significant."""
    g = Graph(n)
    nbits = n * (n - 1) // 2
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if code >> k & 1:
                g.add_edge(i, j)
            k -= 1
    return g


def canonical_form(g: Graph) -> Graph:
    return graph_from_code(g.n, canonical_code(g))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.m == h.m and canonical_code(g) == canonical_code(h)


_enum_cache: dict[int, list[int]] = {0: [0], 1: [0]}


def _codes(n: int) -> list[int]:
    if n in _enum_cache:
        return _enum_cache[n]
    prev = _codes(n - 1)
    seen: set[int] = set()
    last = n - 1
    for code in prev:
        base = graph_from_code(n - 1, code)
        for nb in range(1 << last):
            g = Graph(n)
            g.adj[:last] = base.adj
            g.adj[last] = nb
            for w in range(last):
                if nb >> w & 1:
                    g.adj[w] |= 1 << last
            seen.add(canonical_code(g))
    out = sorted(seen)
    _enum_cache[n] = out
    return out


def enumerate_all(n: int, allow_large: bool = False) -> Iterator[Graph]:
    """One canonical representative per isomorphism class on ``n`` vertices.

    Classes are grown by adding a vertex to every class on ``n - 1``
    vertices with every neighbourhood, then deduplicated by canonical code;
    output is in ascending code order.
    """
    limit = ENUM_LIMIT_OPT_IN if allow_large else ENUM_LIMIT
    if not 0 <= n <= limit:
        raise GraphError(f"enumeration supports n <= {limit} (got {n})")
    for code in _codes(n):
        yield graph_from_code(n, code)


def read_corpus(lines: Iterable[str | bytes]) -> Iterator[Graph]:
    """Graphs from a newline-delimited graph6 corpus (``#`` comments allowed)."""
    for _, g in read_graph6_lines(lines):
        yield g


# ---------------------------------------------------------------- constructions


def empty(n: int) -> Graph:
    return Graph(n)


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for j in range(n) for i in range(j)])


def cycle(n: int) -> Graph:
    """Vertices ``0..n-1`` in cyclic order."""
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_multipartite(parts: Iterable[int]) -> Graph:
    """Parts occupy consecutive index blocks in the given order."""
    sizes = list(parts)
    if any(s < 0 for s in sizes):
        raise GraphError("part sizes must be non-negative")
    owner = [p for p, s in enumerate(sizes) for _ in range(s)]
    n = len(owner)
    return Graph.from_edges(
        n, [(i, j) for j in range(n) for i in range(j) if owner[i] != owner[j]]
    )


def apple() -> Graph:
    """C5 on ``0..4`` plus vertex 5 adjacent to 0 only."""
    return Graph.from_edges(6, cycle(5).edges() + [(0, 5)])


def torch() -> Graph:
    """C5 on ``0..4`` plus vertex 5 adjacent to 0 and 2."""
    return Graph.from_edges(6, cycle(5).edges() + [(0, 5), (2, 5)])


def claw() -> Graph:
    """Center 0, leaves 1..3."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """``g`` on ``0..g.n-1``, ``h`` shifted by ``g.n``."""
    out = Graph(g.n + h.n)
    out.adj[: g.n] = g.adj
    out.adj[g.n :] = [row << g.n for row in h.adj]
    return out


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus every edge between the two sides."""
    out = disjoint_union(g, h)
    left = (1 << g.n) - 1
    right = ((1 << h.n) - 1) << g.n
    for v in range(g.n):
        out.adj[v] |= right
    for v in range(g.n, out.n):
        out.adj[v] |= left
    return out


def k9_plus_pendant() -> Graph:
    """K9 on ``0..8`` plus vertex 9 adjacent to vertex 0."""
    g = complete(9)
    g2 = disjoint_union(g, Graph(1))
    return g2.add_edge(0, 9)


CONSTRUCTORS = {
    "empty": empty,
    "complete": complete,
    "cycle": cycle,
    "path": path,
    "complete_multipartite": complete_multipartite,
    "apple": apple,
    "torch": torch,
    "claw": claw,
    "k9_plus_pendant": k9_plus_pendant,
    "join": join,
    "disjoint_union": disjoint_union,
}


def construct(name: str, *params) -> Graph:
    try:
        fn = CONSTRUCTORS[name]
    except KeyError:
        raise GraphError(f"unknown construction {name!r}") from None
    return fn(*params)


# ---------------------------------------------------------------- sampler


class SamplerInfeasible(RuntimeError):
    """The chain did not reach the requested degree range; carries the best graph."""

    def __init__(self, message: str, best: Graph | None):
        super().__init__(message)
        self.best = best


@dataclass
class SamplerConfig:
    """Parameters of the edge-flip chain.

    The chain starts from the edgeless graph and proposes uniformly random
    pair flips; a flip is rejected if it pushes the maximum degree above
    ``delta_max`` or (with ``member_filter``) creates an induced P6, apple
    or torch. After ``burn_in`` proposals the first state with
    ``delta >= delta_min`` is returned, checked every ``stride`` proposals.
    """

    n: int
    delta_min: int = 9
    delta_max: int = 9
    seed: int = 0
    max_flips: int = 200_000
    burn_in: int = 0
    stride: int = 1
    member_filter: bool = True

    def validate(self) -> None:
        if self.n < 1 or self.n > 64:
            raise GraphError("sampler n must be in 1..64")
        if self.delta_min > self.delta_max:
            raise GraphError("delta_min exceeds delta_max")
        if self.delta_min > self.n - 1:
            raise GraphError(f"delta {self.delta_min} impossible on {self.n} vertices")
        if self.stride < 1:
            raise GraphError("stride must be positive")


def sample_class_member(cfg: SamplerConfig) -> Graph:
    """Run the seeded flip chain and return a graph in the requested range.

    With the filter on, the output is a (P6, apple, torch)-free graph; it is
    revalidated from scratch before being returned.
    """
    cfg.validate()
    rng = random.Random(cfg.seed)
    n = cfg.n
    g = Graph(n)
    deg = [0] * n
    best = g.copy()
    best_delta = 0
    for step in range(1, cfg.max_flips + 1):
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        if v >= u:
            v += 1
        if g.adj[u] >> v & 1:
            g.remove_edge(u, v)
            if cfg.member_filter and creates_forbidden(g, u, v):
                g.add_edge(u, v)
            else:
                deg[u] -= 1
                deg[v] -= 1
        elif deg[u] < cfg.delta_max and deg[v] < cfg.delta_max:
            g.add_edge(u, v)
            if cfg.member_filter and creates_forbidden(g, u, v):
                g.remove_edge(u, v)
            else:
                deg[u] += 1
                deg[v] += 1
        if step > cfg.burn_in and step % cfg.stride == 0:
            d = max(deg)
            if d > best_delta:
                best, best_delta = g.copy(), d
            if cfg.delta_min <= d <= cfg.delta_max:
                if cfg.member_filter and not is_member(g):
                    raise AssertionError("sampler produced a non-member")
                assert max_degree(g) == d
                return g
    raise SamplerInfeasible(
        f"no graph with delta in [{cfg.delta_min}, {cfg.delta_max}] after "
        f"{cfg.max_flips} flips (best delta {best_delta})",
        best,
    )
