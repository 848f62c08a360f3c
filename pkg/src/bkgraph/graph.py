"""Simple graphs on at most 64 vertices, colorings and graph6 I/O.

Adjacency rows are Python ints used as bitsets; vertices are 0-indexed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64
UNCOLORED = 0


class GraphError(ValueError):
    """Invalid graph construction or query."""


class Graph6Error(ValueError):
    """Malformed graph6 input."""


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Simple undirected graph with bitset adjacency.

    Mutation is only meant for construction; all query functions treat the
    graph as immutable.
    """

    __slots__ = ("n", "adj")

    def __init__(self, n: int, adj: Sequence[int] | None = None):
        if not 0 <= n <= MAX_VERTICES:
            raise GraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        self.n = n
        if adj is None:
            self.adj = [0] * n
        else:
            if len(adj) != n:
                raise GraphError("adjacency length does not match n")
            self.adj = list(adj)
            if not self._valid():
                raise GraphError("adjacency is not symmetric and irreflexive")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range for n={self.n}")

    def _valid(self) -> bool:
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full or row >> v & 1:
                return False
            for w in bits(row):
                if not self.adj[w] >> v & 1:
                    return False
        return True

    def add_edge(self, u: int, v: int) -> Graph:
        """Add edge ``uv`` (idempotent) and return the graph."""
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        self.adj[u] |= 1 << v
        self.adj[v] |= 1 << u
        assert self.adj[u] >> v & 1 and self.adj[v] >> u & 1
        return self

    def remove_edge(self, u: int, v: int) -> Graph:
        self._check_vertex(u)
        self._check_vertex(v)
        self.adj[u] &= ~(1 << v)
        self.adj[v] &= ~(1 << u)
        return self

    def copy(self) -> Graph:
        g = Graph(self.n)
        g.adj = list(self.adj)
        return g

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        self._check_vertex(v)
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in bits(self.adj[v] & ((1 << v) - 1))]

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.adj)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def graph_new(n: int) -> Graph:
    return Graph(n)


def max_degree(g: Graph) -> int:
    return max((row.bit_count() for row in g.adj), default=0)


def degree(g: Graph, v: int) -> int:
    return g.degree(v)


def _as_mask(g: Graph, s: int | Iterable[int]) -> int:
    m = s if isinstance(s, int) else mask_of(s)
    if m < 0 or m & ~g.vertex_mask:
        raise GraphError("vertex set contains out-of-range vertices")
    return m


def is_clique(g: Graph, s: int | Iterable[int]) -> bool:
    m = _as_mask(g, s)
    return all((g.adj[v] | (1 << v)) & m == m for v in bits(m))


def is_stable(g: Graph, s: int | Iterable[int]) -> bool:
    m = _as_mask(g, s)
    return all(g.adj[v] & m == 0 for v in bits(m))


def induced_subgraph(g: Graph, s: int | Iterable[int]) -> Graph:
    """``G[S]`` with vertices relabeled in ascending original order."""
    m = _as_mask(g, s)
    keep = list(bits(m))
    index = {v: i for i, v in enumerate(keep)}
    h = Graph(len(keep))
    for i, v in enumerate(keep):
        h.adj[i] = mask_of(index[w] for w in bits(g.adj[v] & m))
    return h


def delete_vertex(g: Graph, v: int) -> Graph:
    g._check_vertex(v)
    return induced_subgraph(g, g.vertex_mask & ~(1 << v))


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.n, [full & ~row & ~(1 << v) for v, row in enumerate(g.adj)])


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == g.vertex_mask


# ---------------------------------------------------------------- colorings


@dataclass(frozen=True)
class Coloring:
    """Vertex colors in ``1..k``; ``UNCOLORED`` (0) marks a blank vertex.

    Partial or improper assignments are representable; use
    :func:`is_proper` to check.
    """

    colors: tuple[int, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))
        for c in self.colors:
            if c != UNCOLORED and not 1 <= c <= self.k:
                raise GraphError(f"color {c} outside palette 1..{self.k}")

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __len__(self) -> int:
        return len(self.colors)

    def with_colors(self, changes: dict[int, int] | Iterable[tuple[int, int]]) -> Coloring:
        cols = list(self.colors)
        items = changes.items() if isinstance(changes, dict) else changes
        for v, c in items:
            cols[v] = c
        return Coloring(tuple(cols), self.k)

    def class_mask(self, color: int) -> int:
        return mask_of(v for v, c in enumerate(self.colors) if c == color)

    @property
    def used(self) -> set[int]:
        return {c for c in self.colors if c != UNCOLORED}

    def is_total(self) -> bool:
        return UNCOLORED not in self.colors

    def relabel(self, perm: dict[int, int]) -> Coloring:
        """Apply a palette permutation ``old -> new`` (missing keys fixed)."""
        return Coloring(
            tuple(perm.get(c, c) if c != UNCOLORED else c for c in self.colors), self.k
        )


def is_proper(g: Graph, c: Coloring) -> bool:
    """True iff every vertex is colored and no edge is monochromatic."""
    if len(c) != g.n or not c.is_total():
        return False
    return all(c[u] != c[v] for u, v in g.edges())


def is_proper_partial(g: Graph, c: Coloring) -> bool:
    """No edge joins two vertices of the same (assigned) color."""
    if len(c) != g.n:
        return False
    return all(c[u] == UNCOLORED or c[u] != c[v] for u, v in g.edges())


# ---------------------------------------------------------------- graph6


def _pair_bits(g: Graph) -> Iterator[int]:
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            yield row >> i & 1


def to_graph6(g: Graph) -> bytes:
    """Short-form graph6 encoding (``n <= 62``)."""
    n = g.n
    if n > 62:
        raise GraphError(f"graph6 short form supports n <= 62, got {n}")
    out = bytearray([n + 63])
    acc = 0
    nacc = 0
    for b in _pair_bits(g):
        acc = (acc << 1) | b
        nacc += 1
        if nacc == 6:
            out.append(acc + 63)
            acc = nacc = 0
    if nacc:
        out.append((acc << (6 - nacc)) + 63)
    return bytes(out)


def from_graph6(text: bytes | str) -> Graph:
    """Decode one graph6 record (optional ``>>graph6<<`` header, trailing newline)."""
    if isinstance(text, str):
        try:
            text = text.encode("ascii")
        except UnicodeEncodeError as exc:
            raise Graph6Error("graph6 must be ASCII") from exc
    data = text.rstrip(b"\r\n")
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<"):]
    if not data:
        raise Graph6Error("empty graph6 string")
    for ch in data:
        if not 63 <= ch <= 126:
            raise Graph6Error(f"byte {ch} outside graph6 range 63..126")
    if data[0] != 126:
        n = data[0] - 63
        body = data[1:]
    elif len(data) >= 4 and data[1] != 126:
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        if n < 63:
            raise Graph6Error("long header used for n < 63")
        body = data[4:]
    else:
        raise Graph6Error("malformed graph6 size header")
    if n > MAX_VERTICES:
        raise Graph6Error(f"n={n} exceeds the {MAX_VERTICES}-vertex limit")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) < need:
        raise Graph6Error(f"truncated body: {len(body)} bytes, expected {need}")
    if len(body) > need:
        raise Graph6Error(f"trailing garbage: {len(body)} bytes, expected {need}")
    g = Graph(n)
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                g.adj[i] |= 1 << j
                g.adj[j] |= 1 << i
            k += 1
    if nbits % 6 and (body[-1] - 63) & ((1 << (6 - nbits % 6)) - 1):
        raise Graph6Error("nonzero padding bits")
    return g


def read_graph6_lines(lines: Iterable[str | bytes]) -> Iterator[tuple[int, Graph]]:
    """Parse newline-delimited graph6, skipping blanks and ``#`` comments.

    Yields ``(line_number, graph)``; errors carry the 1-based line number.
    """
    for lineno, line in enumerate(lines, 1):
        if isinstance(line, bytes):
            line = line.decode("ascii", errors="replace")
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        try:
            yield lineno, from_graph6(s)
        except Graph6Error as exc:
            raise Graph6Error(f"line {lineno}: {exc}") from exc
