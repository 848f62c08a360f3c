"""Critical configurations, Kempe chains and the recoloring rules.

A configuration is a vertex ``u`` of degree ``k + 1`` together with a proper
``k``-coloring of ``G - u`` in which the neighbours of ``u`` carry colors
``1..k-1`` once each (``u_1..u_{k-1}``) and color ``k`` twice (``x`` and
``y``). With ``k = 8`` this is the degree-9 setting the rules were written
for; ``bk_color`` reuses them with ``k = Delta - 1``.

Every rule either extends the coloring to ``u`` (SUCCESS, with the full
recoloring trace) or reports NOT_APPLICABLE. Outputs are re-checked for
properness before being reported as SUCCESS.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from bkgraph.graph import (
    UNCOLORED,
    Coloring,
    Graph,
    GraphError,
    bits,
    induced_subgraph,
    is_proper,
    max_degree,
)
from bkgraph.solvers import SolverTimeout, clique_number, is_k_colorable


class ConfigError(ValueError):
    """Precondition of a configuration operation violated."""


# ---------------------------------------------------------------- profiles


@dataclass(frozen=True)
class ColorProfile:
    """How the palette ``1..k`` appears around ``vertex``.

    ``missing`` excludes the vertex's own color, so a missing color is one
    the vertex could switch to. ``unique`` maps a color to its single
    neighbour; ``repeat`` maps a color to all (two or more) neighbours.
    """

    vertex: int
    own: int
    k: int
    missing: frozenset[int]
    unique: dict[int, int] = field(hash=False)
    repeat: dict[int, tuple[int, ...]] = field(hash=False)

    @property
    def has_missing(self) -> bool:
        return bool(self.missing)


def color_profile(g: Graph, c: Coloring, v: int, ignore: Iterable[int] = ()) -> ColorProfile:
    """Profile of ``v``; neighbours in ``ignore`` are treated as absent."""
    skip = set(ignore)
    counts: dict[int, list[int]] = {}
    for w in bits(g.adj[v]):
        if w in skip:
            continue
        cw = c[w]
        if cw == UNCOLORED:
            raise ConfigError(f"neighbour {w} of {v} is uncolored")
        counts.setdefault(cw, []).append(w)
    own = c[v]
    missing = frozenset(r for r in range(1, c.k + 1) if r not in counts and r != own)
    unique = {r: ws[0] for r, ws in sorted(counts.items()) if len(ws) == 1}
    repeat = {r: tuple(ws) for r, ws in sorted(counts.items()) if len(ws) > 1}
    return ColorProfile(v, own, c.k, missing, unique, repeat)


# ---------------------------------------------------------------- Kempe chains


def kempe_component(g: Graph, c: Coloring, v: int, i: int, j: int) -> int:
    """Bitmask of the component of ``G[color i or j]`` containing ``v``."""
    if c[v] not in (i, j) or i == j:
        raise ConfigError(f"vertex {v} has color {c[v]}, not one of {i}, {j}")
    allowed = c.class_mask(i) | c.class_mask(j)
    comp = 1 << v
    frontier = comp
    while frontier:
        nxt = 0
        for w in bits(frontier):
            nxt |= g.adj[w]
        nxt &= allowed & ~comp
        comp |= nxt
        frontier = nxt
    return comp


def kempe_swap(g: Graph, c: Coloring, v: int, i: int, j: int) -> Coloring:
    """Exchange colors ``i`` and ``j`` on the Kempe component of ``v``."""
    comp = kempe_component(g, c, v, i, j)
    return c.with_colors((w, j if c[w] == i else i) for w in bits(comp))


# ---------------------------------------------------------------- configuration


@dataclass(frozen=True)
class CriticalConfig:
    """``(u, phi)``: ``named[i - 1]`` is ``u_i``; ``x < y`` share color ``k``."""

    graph: Graph
    u: int
    coloring: Coloring
    named: tuple[int, ...]
    x: int
    y: int

    @property
    def k(self) -> int:
        return self.coloring.k

    def ui(self, i: int) -> int:
        return self.named[i - 1]

    @property
    def neighborhood(self) -> tuple[int, ...]:
        return self.named + (self.x, self.y)

    def profile(self, v: int) -> ColorProfile:
        return color_profile(self.graph, self.coloring, v, ignore=(self.u,))

    def colored_nbrs(self, v: int, color: int) -> int:
        """Mask of ``color``-colored neighbours of ``v`` in ``G - u``."""
        return self.graph.adj[v] & self.coloring.class_mask(color) & ~(1 << self.u)

    def unique_nbr(self, v: int, color: int) -> int | None:
        m = self.colored_nbrs(v, color)
        if m and m & (m - 1) == 0:
            return m.bit_length() - 1
        return None

    def to_dict(self) -> dict:
        return {
            "u": self.u,
            "k": self.k,
            "named": {f"u{i + 1}": v for i, v in enumerate(self.named)},
            "x": self.x,
            "y": self.y,
            "coloring": list(self.coloring.colors),
        }


def extract_config(g: Graph, c: Coloring, u: int, k: int = 8) -> CriticalConfig | None:
    """Read off ``(u, phi)`` from a coloring of ``G - u``.

    Returns ``None`` when the neighbour colors are not ``k - 1`` distinct
    colors plus one color used twice. The doubled color ``d`` is swapped
    with ``k`` in the palette; ``u_i`` is then the neighbour colored ``i``
    and ``x`` is the lower-indexed of the two ``k``-colored neighbours.
    """
    if not 0 <= u < g.n:
        raise ConfigError(f"vertex {u} out of range")
    if g.degree(u) != k + 1:
        raise ConfigError(f"vertex {u} has degree {g.degree(u)}, expected {k + 1}")
    if len(c) != g.n:
        raise ConfigError("coloring length does not match the graph")
    cols = list(c.colors)
    cols[u] = UNCOLORED
    for v, cv in enumerate(cols):
        if v != u and not 1 <= cv <= k:
            raise ConfigError(f"vertex {v} has color {cv} outside 1..{k}")
    for a, b in g.edges():
        if a != u and b != u and cols[a] == cols[b]:
            raise ConfigError(f"coloring is improper on edge {a}-{b}")
    nb = g.neighbors(u)
    by_color: dict[int, list[int]] = {}
    for w in nb:
        by_color.setdefault(cols[w], []).append(w)
    doubled = [col for col, ws in by_color.items() if len(ws) == 2]
    if len(by_color) != k or len(doubled) != 1:
        return None
    d = doubled[0]
    perm = {d: k, k: d} if d != k else {}
    phi = Coloring(tuple(cols), k).relabel(perm)
    named = tuple(next(w for w in nb if phi[w] == i) for i in range(1, k))
    x, y = sorted(w for w in nb if phi[w] == k)
    return CriticalConfig(g, u, phi, named, x, y)


def config_palette_swap(c: Coloring, u: int, k: int, g: Graph) -> dict[int, int]:
    """The palette swap ``extract_config`` would apply (an involution)."""
    counts: dict[int, int] = {}
    for w in bits(g.adj[u]):
        counts[c[w]] = counts.get(c[w], 0) + 1
    d = next((col for col, m in counts.items() if m == 2), k)
    return {d: k, k: d} if d != k else {}


# ---------------------------------------------------------------- outcomes


class Status(Enum):
    SUCCESS = "SUCCESS"
    NOT_APPLICABLE = "NOT_APPLICABLE"
    FAILED = "FAILED"


@dataclass(frozen=True)
class Step:
    vertex: int
    old: int
    new: int

    def to_dict(self) -> dict:
        return {"vertex": self.vertex, "from": self.old or None, "to": self.new}


@dataclass
class RuleOutcome:
    status: Status
    rule: str
    move: str | None = None
    coloring: Coloring | None = None
    trace: list[Step] = field(default_factory=list)

    @property
    def success(self) -> bool:
        return self.status is Status.SUCCESS

    def trace_json(self) -> str:
        return json.dumps([s.to_dict() for s in self.trace])


def _not_applicable(rule: str) -> RuleOutcome:
    return RuleOutcome(Status.NOT_APPLICABLE, rule)


def _apply(cfg: CriticalConfig, rule: str, move: str, changes: list[tuple[int, int]]) -> RuleOutcome:
    cols = list(cfg.coloring.colors)
    trace = []
    for v, new in changes:
        trace.append(Step(v, cols[v], new))
        cols[v] = new
    out = Coloring(tuple(cols), cfg.k)
    if is_proper(cfg.graph, out):
        return RuleOutcome(Status.SUCCESS, rule, move, out, trace)
    return RuleOutcome(Status.FAILED, rule, move, out, trace)


# ---------------------------------------------------------------- R1


def rule_missing_color(cfg: CriticalConfig) -> RuleOutcome:
    """R1: some ``u_i`` sees a free color ``r``: ``u_i -> r``, ``u -> i``."""
    for i in range(1, cfg.k):
        v = cfg.ui(i)
        prof = cfg.profile(v)
        if prof.missing:
            r = min(prof.missing)
            return _apply(cfg, "R1", "missing-color", [(v, r), (cfg.u, i)])
    return _not_applicable("R1")


# ---------------------------------------------------------------- R2


def ij_path(cfg: CriticalConfig, i: int, j: int) -> list[int] | None:
    """Shortest ``(i, j)``-alternating path from ``u_i`` to ``u_j`` (BFS), or ``None``."""
    a, b = cfg.ui(i), cfg.ui(j)
    if cfg.graph.has_edge(a, b):
        raise ConfigError(f"u{i} and u{j} are adjacent")
    col = cfg.coloring
    parent = {a: a}
    queue = [a]
    for v in queue:
        want = j if col[v] == i else i
        for w in cfg.graph.neighbors(v):
            if w != cfg.u and w not in parent and col[w] == want:
                parent[w] = v
                if w == b:
                    path = [w]
                    while path[-1] != a:
                        path.append(parent[path[-1]])
                    return path[::-1]
                queue.append(w)
    return None


def exists_ij_path(cfg: CriticalConfig, i: int, j: int) -> bool:
    return ij_path(cfg, i, j) is not None


def rule_kempe_chain(cfg: CriticalConfig) -> RuleOutcome:
    """R2: ``u_i``, ``u_j`` non-adjacent in different ``{i, j}``-components.

    Swap the component of ``u_i`` (it becomes ``j``), then ``u -> i``.
    """
    g, c = cfg.graph, cfg.coloring
    for i in range(1, cfg.k):
        for j in range(i + 1, cfg.k):
            a, b = cfg.ui(i), cfg.ui(j)
            if g.has_edge(a, b):
                continue
            comp = kempe_component(g, c, a, i, j)
            if comp >> b & 1:
                continue
            changes = [(w, j if c[w] == i else i) for w in bits(comp)]
            changes.append((cfg.u, i))
            return _apply(cfg, "R2", f"kempe-swap({i},{j})", changes)
    return _not_applicable("R2")


# ---------------------------------------------------------------- R3


def _only_nbr_is(cfg: CriticalConfig, v: int, color: int, w: int) -> bool:
    return cfg.colored_nbrs(v, color) == 1 << w


def rule_neighbor_shuffle(cfg: CriticalConfig) -> RuleOutcome:
    """R3: recolor the ``j``-neighbours of ``u_i`` so ``u_i`` can take ``j``.

    For every ordered non-adjacent pair ``(i, j)``, with ``J`` the
    ``j``-colored neighbours of ``u_i``:

    * ``|J| = 1``, ``v`` has a missing color ``r``: ``v -> r``;
    * ``|J| = 1``, ``u_i`` is the only ``i``-neighbour of ``v``: ``v -> i``;
    * ``|J| = 2``, ``u_i`` is the only ``i``-neighbour of both: both ``-> i``;
    * ``|J| = 2``, both have missing colors: each to its own;
    * ``|J| = 2``, one has a missing color, the other sees only ``u_i``.

    Then ``u_i -> j`` and ``u -> i``.
    """
    g = cfg.graph
    k = cfg.k
    u = cfg.u
    for i in range(1, k):
        for j in range(1, k):
            if i == j:
                continue
            ui = cfg.ui(i)
            if g.has_edge(ui, cfg.ui(j)):
                continue
            J = list(bits(cfg.colored_nbrs(ui, j)))
            tail = [(ui, j), (u, i)]
            if len(J) == 1:
                v = J[0]
                miss = cfg.profile(v).missing
                if miss:
                    return _apply(cfg, "R3", f"single-missing({i},{j})", [(v, min(miss))] + tail)
                if _only_nbr_is(cfg, v, i, ui):
                    return _apply(cfg, "R3", f"single-unique({i},{j})", [(v, i)] + tail)
            elif len(J) == 2:
                v, w = J
                mv, mw = cfg.profile(v).missing, cfg.profile(w).missing
                uv, uw = _only_nbr_is(cfg, v, i, ui), _only_nbr_is(cfg, w, i, ui)
                if uv and uw:
                    return _apply(cfg, "R3", f"pair-unique({i},{j})", [(v, i), (w, i)] + tail)
                if mv and mw:
                    r = min(mv)
                    r2 = min(mw - {r}) if mw - {r} else min(mw)
                    return _apply(cfg, "R3", f"pair-missing({i},{j})", [(v, r), (w, r2)] + tail)
                if mv and uw:
                    return _apply(cfg, "R3", f"mixed({i},{j})", [(v, min(mv)), (w, i)] + tail)
                if mw and uv:
                    return _apply(cfg, "R3", f"mixed({i},{j})", [(w, min(mw)), (v, i)] + tail)
    return _not_applicable("R3")


# ---------------------------------------------------------------- R4


def _reduce(cfg: CriticalConfig, move: str, pre: list[tuple[int, int]], depth: int) -> RuleOutcome | None:
    """Recolor ``G - u`` by ``pre``, re-extract the configuration, run R1-R4."""
    g, u, k = cfg.graph, cfg.u, cfg.k
    cols = list(cfg.coloring.colors)
    pre_trace = []
    for v, new in pre:
        pre_trace.append(Step(v, cols[v], new))
        cols[v] = new
    derived = Coloring(tuple(cols), k)
    if any(a != u and b != u and cols[a] == cols[b] for a, b in g.edges()):
        return None
    sub = extract_config(g, derived, u, k)
    if sub is None:
        return None
    perm = config_palette_swap(derived, u, k, g)
    out = apply_rules(sub, depth=depth - 1)
    if not out.success:
        return None
    final = out.coloring.relabel(perm)
    trace = pre_trace + [Step(s.vertex, perm.get(s.old, s.old), perm.get(s.new, s.new)) for s in out.trace]
    status = Status.SUCCESS if is_proper(g, final) else Status.FAILED
    return RuleOutcome(status, "R4", f"{move}>{out.rule}:{out.move}", final, trace)


def rule_md(cfg: CriticalConfig, depth: int = 1) -> RuleOutcome:
    """R4: the structural moves on ``N(u)``.

    Direct moves are tried first, in this order:

    * common unique vertex: ``u_a ~/~ u_b`` both see ``w in N(u)`` (color
      ``t``) as their only ``t``-neighbour and ``u_a`` is the only
      ``a``-neighbour of ``w``: ``u_a, u_b -> t``, ``w -> a``, ``u -> b``
      (``w = x`` gives the color-``k`` variant);
    * ``x`` (or ``y``) is the only ``k``-neighbour of ``u_a`` and has a
      missing color ``r``: ``x -> r``, ``u_a -> k``, ``u -> a``;
    * ``x ~/~ u_a`` and ``u_t`` is the only ``t``-neighbour of both, and
      ``x`` is the only ``k``-neighbour of ``u_t``: ``x, u_a -> t``,
      ``u_t -> k``, ``u -> a``;
    * ``u_a`` misses both ``x`` and ``y``: every ``k``-neighbour of ``u_a``
      sees ``u_a`` as its only ``a``-neighbour, so they take ``a`` and
      ``u_a -> k``, ``u -> a``; or neither ``x`` nor ``y`` has an
      ``a``-neighbour: ``x, y -> a``, ``u -> k``.

    Then the reductions, which recolor ``G - u`` and re-run R1-R4 on the
    resulting configuration (``depth`` bounds the nesting): in the
    xy-swap shape but with ``u_a`` the only ``a``-neighbour of ``u_t``,
    ``x, u_a -> t`` and ``u_t -> a``; otherwise ``x`` (or ``y``) takes a
    missing color.
    """
    g, k, u = cfg.graph, cfg.k, cfg.u
    x, y = cfg.x, cfg.y
    col = cfg.coloring
    nbhd = sorted(cfg.neighborhood, key=lambda w: (col[w], w))

    for a in range(1, k):
        for b in range(a + 1, k):
            ua, ub = cfg.ui(a), cfg.ui(b)
            if g.has_edge(ua, ub):
                continue
            for w in nbhd:
                t = col[w]
                if t in (a, b):
                    continue
                if cfg.unique_nbr(ua, t) != w or cfg.unique_nbr(ub, t) != w:
                    continue
                if cfg.unique_nbr(w, a) == ua:
                    return _apply(cfg, "R4", f"common-unique({a},{b};{w})", [(ua, t), (ub, t), (w, a), (u, b)])
                if cfg.unique_nbr(w, b) == ub:
                    return _apply(cfg, "R4", f"common-unique({a},{b};{w})", [(ua, t), (ub, t), (w, b), (u, a)])

    for a in range(1, k):
        ua = cfg.ui(a)
        for w in (x, y):
            if cfg.unique_nbr(ua, k) != w:
                continue
            miss = cfg.profile(w).missing
            if miss:
                return _apply(cfg, "R4", f"xy-missing({a};{w})", [(w, min(miss)), (ua, k), (u, a)])

    for a in range(1, k):
        ua = cfg.ui(a)
        for w in (x, y):
            if g.has_edge(w, ua):
                continue
            for t in range(1, k):
                if t == a:
                    continue
                ut = cfg.ui(t)
                if cfg.unique_nbr(w, t) != ut or cfg.unique_nbr(ua, t) != ut:
                    continue
                if cfg.unique_nbr(ut, k) == w:
                    return _apply(cfg, "R4", f"xy-swap({a},{t};{w})", [(w, t), (ua, t), (ut, k), (u, a)])

    for a in range(1, k):
        ua = cfg.ui(a)
        if g.has_edge(ua, x) or g.has_edge(ua, y):
            continue
        v8 = list(bits(cfg.colored_nbrs(ua, k)))
        if v8 and all(_only_nbr_is(cfg, v, a, ua) for v in v8):
            return _apply(cfg, "R4", f"far-swap({a})", [(v, a) for v in v8] + [(ua, k), (u, a)])
    for a in range(1, k):
        if not cfg.colored_nbrs(x, a) and not cfg.colored_nbrs(y, a):
            return _apply(cfg, "R4", f"xy-take({a})", [(x, a), (y, a), (u, k)])

    if depth > 0:
        for a in range(1, k):
            ua = cfg.ui(a)
            for w in (x, y):
                if g.has_edge(w, ua):
                    continue
                for t in range(1, k):
                    ut = cfg.ui(t)
                    if t == a or cfg.unique_nbr(w, t) != ut or cfg.unique_nbr(ua, t) != ut:
                        continue
                    if cfg.unique_nbr(ut, a) == ua:
                        out = _reduce(cfg, f"xy-reduce({a},{t};{w})", [(w, t), (ua, t), (ut, a)], depth)
                        if out is not None:
                            return out
        for w in (x, y):
            for r in sorted(cfg.profile(w).missing):
                out = _reduce(cfg, f"xy-missing-reduce({w}->{r})", [(w, r)], depth)
                if out is not None:
                    return out
    return _not_applicable("R4")


RULES = (
    ("R1", rule_missing_color),
    ("R2", rule_kempe_chain),
    ("R3", rule_neighbor_shuffle),
    ("R4", rule_md),
)


def apply_rules(cfg: CriticalConfig, depth: int = 1) -> RuleOutcome:
    """R1 -> R2 -> R3 -> R4; the first SUCCESS wins."""
    failed = None
    for name, rule in RULES:
        out = rule(cfg, depth) if rule is rule_md else rule(cfg)
        if out.success:
            return out
        if out.status is Status.FAILED and failed is None:
            failed = out
    return failed or _not_applicable("R1-R4")


# ---------------------------------------------------------------- audits


@dataclass
class MDAudit:
    """The two structural conditions on ``N(u)``.

    ``holds_i``: every ``u_i`` is non-adjacent to at most two other ``u_k``.
    ``holds_ii``: every ``u_i`` is adjacent to ``x`` or ``y``.
    ``strengthened``: at least five ``u_i`` are adjacent to ``x`` or ``y``.
    """

    holds_i: bool
    holds_ii: bool
    strengthened: bool
    clique: bool
    non_adjacent: dict[int, list[int]]
    sees_neither: list[int]

    @property
    def both_hold(self) -> bool:
        return self.holds_i and self.holds_ii

    def to_dict(self) -> dict:
        return {
            "holds_i": self.holds_i,
            "holds_ii": self.holds_ii,
            "strengthened": self.strengthened,
            "case": "clique" if self.clique else "non-clique",
            "non_adjacent": {f"u{i}": [f"u{j}" for j in js] for i, js in self.non_adjacent.items()},
            "sees_neither_x_nor_y": [f"u{i}" for i in self.sees_neither],
        }


def audit_md(cfg: CriticalConfig) -> MDAudit:
    g, k = cfg.graph, cfg.k
    non_adj = {
        i: [j for j in range(1, k) if j != i and not g.has_edge(cfg.ui(i), cfg.ui(j))]
        for i in range(1, k)
    }
    seen = [i for i in range(1, k) if g.has_edge(cfg.ui(i), cfg.x) or g.has_edge(cfg.ui(i), cfg.y)]
    neither = [i for i in range(1, k) if i not in seen]
    return MDAudit(
        holds_i=all(len(js) <= 2 for js in non_adj.values()),
        holds_ii=not neither,
        strengthened=len(seen) >= 5,
        clique=all(not js for js in non_adj.values()),
        non_adjacent=non_adj,
        sees_neither=neither,
    )


def is_hole(g: Graph, cycle: list[int]) -> bool:
    """Is ``cycle`` (in order) an induced cycle of length at least 4?"""
    L = len(cycle)
    if L < 4 or len(set(cycle)) != L:
        return False
    for a in range(L):
        for b in range(a + 1, L):
            if g.has_edge(cycle[a], cycle[b]) != ((b - a) % L in (1, L - 1)):
                return False
    return True


def audit_neighborhood(cfg: CriticalConfig) -> dict:
    """Report the three neighbourhood conditions used by R1-R3.

    ``a``: the ``u_i`` that have a missing color. ``b``: for each
    non-adjacent pair the alternating path (or ``None``) and whether path
    plus ``u`` is an odd hole. ``c``: for each ordered non-adjacent pair,
    whether ``u_i`` has a ``j``-neighbour with no missing color and another
    ``i``-neighbour besides ``u_i``.
    """
    g, k = cfg.graph, cfg.k
    a = [i for i in range(1, k) if cfg.profile(cfg.ui(i)).missing]
    b = {}
    c = {}
    for i in range(1, k):
        for j in range(1, k):
            if i == j or g.has_edge(cfg.ui(i), cfg.ui(j)):
                continue
            if i < j:
                p = ij_path(cfg, i, j)
                b[(i, j)] = {
                    "path": p,
                    "odd_hole": p is not None and len(p) % 2 == 0 and is_hole(g, p + [cfg.u]),
                }
            ui = cfg.ui(i)
            c[(i, j)] = any(
                not cfg.profile(v).missing and cfg.colored_nbrs(v, i) & ~(1 << ui)
                for v in bits(cfg.colored_nbrs(ui, j))
            )
    return {"a": a, "b": b, "c": c}


# ---------------------------------------------------------------- random configs


def random_config(rng: random.Random, k: int = 8, extra: int | None = None, density: float | None = None) -> CriticalConfig:
    """A random graph with a valid ``(u, phi)``.

    ``u`` gets ``k + 1`` neighbours colored ``1..k-1, k, k``; every other
    vertex gets a random color and edges are drawn only between distinct
    colors, so ``phi`` is proper by construction.
    """
    if extra is None:
        extra = rng.randint(2, 16)
    if density is None:
        density = rng.uniform(0.15, 0.9)
    n = 1 + (k + 1) + extra
    if n > 64:
        raise GraphError("random configuration exceeds 64 vertices")
    labels = list(range(n))
    rng.shuffle(labels)
    u = labels[0]
    nbrs = labels[1 : k + 2]
    cols = [0] * n
    for i, w in enumerate(nbrs[: k - 1]):
        cols[w] = i + 1
    cols[nbrs[k - 1]] = cols[nbrs[k]] = k
    for w in labels[k + 2 :]:
        cols[w] = rng.randint(1, k)
    g = Graph(n)
    for w in nbrs:
        g.add_edge(u, w)
    others = labels[1:]
    for a_idx in range(len(others)):
        for b_idx in range(a_idx + 1, len(others)):
            p, q = others[a_idx], others[b_idx]
            if cols[p] != cols[q] and rng.random() < density:
                g.add_edge(p, q)
    cfg = extract_config(g, Coloring(tuple(cols), k), u, k)
    assert cfg is not None
    return cfg


# ---------------------------------------------------------------- bk_color


@dataclass
class BKColorResult:
    """Outcome of :func:`bk_color`.

    ``status`` is ``COLORED`` (``coloring`` proper with at most ``k``
    colors), ``OBSTRUCTION`` (``clique`` has at least ``Delta`` vertices, so
    the bound is ``omega``; ``coloring`` is an ``omega``-coloring unless the
    budget ran out) or ``GIVE_UP`` (``diagnostic`` says why).
    """

    status: str
    k: int
    coloring: Coloring | None = None
    clique: list[int] | None = None
    diagnostic: str = ""
    stats: dict = field(default_factory=dict)


def _new_stats() -> dict:
    return {
        "stuck": 0,
        "resolved_free": 0,
        "resolved_rules": {"R1": 0, "R2": 0, "R3": 0, "R4": 0},
        "unresolved": 0,
        "fallback": False,
    }


def bk_color(
    g: Graph, budget_s: float | None = 10.0, order: list[int] | None = None
) -> BKColorResult:
    """Color ``g`` with ``max(Delta - 1, omega)`` colors.

    DSATUR (or plain greedy along ``order`` when given) with a fixed palette
    of ``k = Delta - 1`` colors; vertices that find every color blocked are
    set aside. Each set-aside vertex is then
    retried: a freed color is taken directly, otherwise, if it has degree
    ``Delta`` with all neighbours colored in the ``(u, phi)`` shape, the
    rules R1-R4 are applied to the colored part. Anything left over goes
    to the exact solver.
    """
    n = g.n
    if order is not None and sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of the vertices")
    delta = max_degree(g)
    omega, cmask = clique_number(g)
    stats = _new_stats()
    if omega >= delta:
        # k = omega here, and chi <= max(Delta, omega) = omega gives an omega-coloring
        try:
            witness = is_k_colorable(g, omega, budget_s)
        except SolverTimeout:
            witness = None
        return BKColorResult("OBSTRUCTION", omega, coloring=witness, clique=list(bits(cmask)),
                             stats=stats, diagnostic=f"omega={omega} >= Delta={delta}")
    k = delta - 1
    cols = [UNCOLORED] * n
    seen: list[set[int]] = [set() for _ in range(n)]
    deg = [row.bit_count() for row in g.adj]
    pending = set(range(n))
    stuck: list[int] = []
    queue = list(reversed(order)) if order is not None else None
    while pending:
        if queue is not None:
            v = queue.pop()
        else:
            v = max(pending, key=lambda w: (len(seen[w]), deg[w], -w))
        pending.discard(v)
        free = [r for r in range(1, k + 1) if r not in seen[v]]
        if not free:
            stuck.append(v)
            continue
        cols[v] = free[0]
        for w in bits(g.adj[v]):
            seen[w].add(free[0])
    stats["stuck"] = len(stuck)

    unresolved = False
    for v in stuck:
        used = {cols[w] for w in bits(g.adj[v])} - {UNCOLORED}
        free = [r for r in range(1, k + 1) if r not in used]
        if free:
            cols[v] = free[0]
            stats["resolved_free"] += 1
            continue
        colored = [w for w in range(n) if cols[w] != UNCOLORED]
        nb_all_colored = all(cols[w] != UNCOLORED for w in bits(g.adj[v]))
        if deg[v] == delta and nb_all_colored:
            keep = sorted(colored + [v])
            h = induced_subgraph(g, keep)
            idx = {w: i for i, w in enumerate(keep)}
            hc = Coloring(tuple(cols[w] for w in keep), k)
            cfg = extract_config(h, hc, idx[v], k)
            if cfg is not None:
                out = apply_rules(cfg)
                if out.success:
                    for w in keep:
                        cols[w] = out.coloring[idx[w]]
                    stats["resolved_rules"][out.rule] += 1
                    continue
        stats["unresolved"] += 1
        unresolved = True

    if not unresolved:
        result = Coloring(tuple(cols), k)
        if is_proper(g, result):
            return BKColorResult("COLORED", k, coloring=result, stats=stats)
        unresolved = True  # defensive: never hand back an improper coloring

    stats["fallback"] = True
    try:
        exact = is_k_colorable(g, k, budget_s)
    except SolverTimeout:
        return BKColorResult("GIVE_UP", k, stats=stats, diagnostic="exact fallback timed out")
    if exact is None:
        return BKColorResult("GIVE_UP", k, stats=stats,
                             diagnostic=f"no proper {k}-coloring exists (chi > Delta - 1)")
    return BKColorResult("COLORED", k, coloring=exact, stats=stats)
