"""Induced-subgraph detection and (P6, apple, torch)-free membership."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from bkgraph import _core
from bkgraph.graph import Graph, GraphError, bits, mask_of

MAX_PATTERN = 7


@dataclass(frozen=True)
class Pattern:
    """A named pattern graph.

    ``graph`` is ``None`` only for the hole patterns, whose length is not
    fixed and which are dispatched to :func:`find_hole`.
    """

    name: str
    graph: Graph | None = field(compare=False)

    @property
    def size(self) -> int:
        return self.graph.n if self.graph is not None else 0

    @classmethod
    def path(cls, k: int) -> Pattern:
        if not 1 <= k <= MAX_PATTERN:
            raise GraphError(f"P{k} outside supported range 1..{MAX_PATTERN}")
        return cls(f"P{k}", Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)]))

    @classmethod
    def cycle(cls, k: int) -> Pattern:
        if not 3 <= k <= MAX_PATTERN:
            raise GraphError(f"C{k} outside supported range 3..{MAX_PATTERN}")
        return cls(f"C{k}", _cycle_graph(k))

    @classmethod
    def custom(cls, g: Graph, name: str = "CUSTOM") -> Pattern:
        if g.n > MAX_PATTERN:
            raise GraphError(f"pattern has {g.n} vertices, limit is {MAX_PATTERN}")
        return cls(name, g)


def _cycle_graph(k: int) -> Graph:
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


# cycle listed first; the sixth vertex attaches to 0 (apple) or to 0 and 2 (torch)
APPLE = Pattern("APPLE", Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0)]))
TORCH = Pattern(
    "TORCH", Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (5, 2)])
)
CLAW = Pattern("CLAW", Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)]))
P6 = Pattern.path(6)
C4 = Pattern.cycle(4)
C5 = Pattern.cycle(5)
HOLE_ODD = Pattern("HOLE_ODD", None)
HOLE_ANY = Pattern("HOLE_ANY", None)

CLASS_PATTERNS = (P6, APPLE, TORCH)


def parse_pattern(token: str) -> Pattern:
    """Parse ``p6``, ``c5``, ``apple``, ``torch``, ``claw``, ``hole``, ``oddhole``."""
    t = token.strip().lower()
    named = {
        "apple": APPLE,
        "torch": TORCH,
        "claw": CLAW,
        "hole": HOLE_ANY,
        "oddhole": HOLE_ODD,
        "odd_hole": HOLE_ODD,
        "hole_odd": HOLE_ODD,
        "hole_any": HOLE_ANY,
    }
    if t in named:
        return named[t]
    if len(t) >= 2 and t[0] in "pc" and t[1:].isdigit():
        k = int(t[1:])
        return Pattern.path(k) if t[0] == "p" else Pattern.cycle(k)
    raise GraphError(f"unknown pattern {token!r}")


def find_induced(g: Graph, h: Pattern | Graph, required: Iterable[int] | int = 0) -> tuple[int, ...] | None:
    """First (lexicographic) vertex tuple inducing ``h`` in ``g``, or ``None``.

    ``witness[t]`` is the image of pattern vertex ``t``. ``required`` restricts
    the search to copies whose image contains the given vertices.
    """
    if isinstance(h, Pattern):
        if h.graph is None:
            if required:
                raise GraphError("hole patterns do not support required vertices")
            return find_hole(g, "odd" if h.name == "HOLE_ODD" else "any")
        hg = h.graph
    else:
        hg = h
    if hg.n > MAX_PATTERN:
        raise GraphError(f"pattern has {hg.n} vertices, limit is {MAX_PATTERN}")
    req = required if isinstance(required, int) else mask_of(required)
    return _core.find_induced(g.adj, g.n, hg.adj, hg.n, req)


def find_hole(g: Graph, parity: str = "any", min_len: int = 4) -> tuple[int, ...] | None:
    """Shortest hole (chordless cycle, length >= ``min_len``) of the given parity.

    ``parity`` is ``"odd"`` or ``"any"``. The witness lists the cycle in order.
    """
    if parity not in ("odd", "any"):
        raise GraphError(f"parity must be 'odd' or 'any', got {parity!r}")
    start = max(min_len, 4)
    for length in range(start, g.n + 1):
        if parity == "odd" and length % 2 == 0:
            continue
        hit = _core.find_induced(g.adj, g.n, _cycle_graph(length).adj, length, 0)
        if hit is not None:
            return hit
    return None


def witness_is_valid(g: Graph, h: Graph, witness: tuple[int, ...]) -> bool:
    """Check that ``witness[t] -> t`` is an induced isomorphism onto ``h``."""
    if len(witness) != h.n or len(set(witness)) != h.n:
        return False
    for s in range(h.n):
        for t in range(s + 1, h.n):
            if g.has_edge(witness[s], witness[t]) != h.has_edge(s, t):
                return False
    return True


@dataclass
class RecognitionReport:
    """Per-pattern verdict: ``None`` for FREE, otherwise the witness tuple."""

    verdicts: dict[str, tuple[int, ...] | None]

    @property
    def member(self) -> bool:
        return all(w is None for w in self.verdicts.values())

    def witness(self, name: str) -> tuple[int, ...] | None:
        return self.verdicts[name]

    def to_dict(self) -> dict:
        return {
            "member": self.member,
            "verdicts": {
                k: ("FREE" if w is None else list(w)) for k, w in self.verdicts.items()
            },
        }


def recognize(g: Graph, patterns: Iterable[Pattern]) -> RecognitionReport:
    return RecognitionReport({p.name: find_induced(g, p) for p in patterns})


def is_class_member(g: Graph) -> RecognitionReport:
    """Verdicts for P6, APPLE and TORCH; member iff all three are FREE.

    The APPLE and TORCH patterns list their 5-cycle first, so the search
    enumerates induced C5s and then tries each outside vertex as the sixth.
    """
    return recognize(g, CLASS_PATTERNS)


def is_member(g: Graph) -> bool:
    return all(find_induced(g, p) is None for p in CLASS_PATTERNS)


def creates_forbidden(g: Graph, u: int, v: int) -> bool:
    """Does ``g`` contain a forbidden pattern using both ``u`` and ``v``?

    Used after flipping the pair ``uv`` in a graph that was a class member:
    every new induced copy must contain both endpoints.
    """
    req = (1 << u) | (1 << v)
    return any(
        _core.find_induced(g.adj, g.n, p.graph.adj, p.graph.n, req) is not None
        for p in CLASS_PATTERNS
    )


class C5Extension(Enum):
    NONE = "NONE"
    APPLE = "APPLE"
    TORCH = "TORCH"
    OTHER = "OTHER"


def is_induced_c5(g: Graph, cycle: tuple[int, ...]) -> bool:
    if len(cycle) != 5 or len(set(cycle)) != 5:
        return False
    for a in range(5):
        for b in range(a + 1, 5):
            consecutive = (b - a) % 5 in (1, 4)
            if g.has_edge(cycle[a], cycle[b]) != consecutive:
                return False
    return True


def classify_c5_extension(g: Graph, cycle: tuple[int, ...], w: int) -> C5Extension:
    """How vertex ``w`` attaches to the induced 5-cycle ``cycle``."""
    if not is_induced_c5(g, cycle):
        raise GraphError(f"{cycle} does not induce a C5")
    if w in cycle:
        raise GraphError(f"vertex {w} lies on the cycle")
    hits = [i for i, c in enumerate(cycle) if g.has_edge(w, c)]
    if not hits:
        return C5Extension.NONE
    if len(hits) == 1:
        return C5Extension.APPLE
    if len(hits) == 2 and (hits[1] - hits[0]) % 5 in (2, 3):
        return C5Extension.TORCH
    return C5Extension.OTHER


def is_bisimplicial(g: Graph, v: int) -> bool:
    """True iff ``N(v)`` is covered by two cliques.

    Equivalently the complement of ``G[N(v)]`` is bipartite.
    """
    nb = g.adj[v] if 0 <= v < g.n else None
    if nb is None:
        raise GraphError(f"vertex {v} out of range for n={g.n}")
    side: dict[int, int] = {}
    for s in bits(nb):
        if s in side:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            a = stack.pop()
            # neighbors of a in the complement of G[N(v)]
            for b in bits(nb & ~g.adj[a] & ~(1 << a)):
                if b not in side:
                    side[b] = 1 - side[a]
                    stack.append(b)
                elif side[b] == side[a]:
                    return False
    return True

