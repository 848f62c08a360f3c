"""Exact clique number, k-colorability, chromatic number and the BK verdict."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field

from bkgraph import _core
from bkgraph.graph import Coloring, Graph, bits, delete_vertex, induced_subgraph, max_degree

DEFAULT_BUDGET_S = 10.0
BK_MIN_DELTA = 9

EXACT = "EXACT"
TIMEOUT = "TIMEOUT"


class SolverTimeout(RuntimeError):
    """The exact search exceeded its time budget."""


def clique_number(g: Graph) -> tuple[int, int]:
    """Return ``(omega, witness_mask)``."""
    mask = _core.max_clique(g.adj, g.n)
    return mask.bit_count(), mask


def dsatur(g: Graph) -> Coloring:
    """Greedy DSATUR coloring with an unbounded palette.

    Ties on saturation go to the higher degree, then the lower index.
    """
    n = g.n
    colors = [0] * n
    seen: list[set[int]] = [set() for _ in range(n)]
    deg = [row.bit_count() for row in g.adj]
    for _ in range(n):
        v = max(
            (w for w in range(n) if not colors[w]),
            key=lambda w: (len(seen[w]), deg[w], -w),
        )
        c = 1
        while c in seen[v]:
            c += 1
        colors[v] = c
        for w in bits(g.adj[v]):
            seen[w].add(c)
    return Coloring(tuple(colors), max(colors, default=0))


def _deadline(budget_s: float | None) -> float:
    return time.perf_counter() + budget_s if budget_s else 0.0


def _peel(g: Graph, k: int) -> tuple[int, list[int]]:
    """Strip vertices of degree < k repeatedly; return (core mask, removal order)."""
    alive = g.vertex_mask
    order = []
    queue = [v for v in range(g.n) if g.adj[v].bit_count() < k]
    gone = 0
    while queue:
        v = queue.pop()
        if gone >> v & 1:
            continue
        gone |= 1 << v
        alive &= ~(1 << v)
        order.append(v)
        for w in bits(g.adj[v] & alive):
            if not gone >> w & 1 and (g.adj[w] & alive).bit_count() < k:
                queue.append(w)
    return alive, order


def _components(g: Graph, mask: int) -> list[int]:
    comps = []
    rest = mask
    while rest:
        comp = rest & -rest
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & mask & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def is_k_colorable(
    g: Graph, k: int, budget_s: float | None = None, *, deadline: float = 0.0
) -> Coloring | None:
    """A proper coloring with colors in ``1..k``, or ``None`` if none exists.

    Vertices of degree below ``k`` are peeled off first (they can always be
    colored last), and each connected component of the remaining core is
    searched on its own. Raises :class:`SolverTimeout` when the budget runs
    out first.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if g.n == 0:
        return Coloring((), k)
    if k == 0:
        return None
    dl = deadline or _deadline(budget_s)
    core, order = _peel(g, k)
    colors = [0] * g.n
    for comp in _components(g, core):
        verts = list(bits(comp))
        h = induced_subgraph(g, comp)
        status, cols = _core.color_search(h.adj, h.n, k, dl)
        if status == _core.TIMEOUT:
            raise SolverTimeout(f"{k}-colorability undecided within budget")
        if status == _core.INFEASIBLE:
            return None
        for v, c in zip(verts, cols):
            colors[v] = c
    for v in reversed(order):
        taken = {colors[w] for w in bits(g.adj[v])}
        colors[v] = next(c for c in range(1, k + 1) if c not in taken)
    return Coloring(tuple(colors), k)


def chromatic_number(
    g: Graph, budget_s: float | None = None, *, deadline: float = 0.0
) -> tuple[int, Coloring]:
    """Exact ``(chi, coloring)``; the coloring uses exactly ``chi`` colors.

    Brackets chi between the clique number and DSATUR, then tightens the
    upper end one color at a time.
    """
    if g.n == 0:
        return 0, Coloring((), 0)
    dl = deadline or _deadline(budget_s)
    lb, _ = clique_number(g)
    best = dsatur(g)
    ub = best.k
    k = ub - 1
    while k >= lb:
        found = is_k_colorable(g, k, deadline=dl)
        if found is None:
            break
        used = max(found.colors)
        best = Coloring(found.colors, used)
        k = used - 1
    return best.k, best


def is_vertex_critical(g: Graph, budget_s: float | None = None) -> bool:
    """True iff deleting any vertex lowers the chromatic number."""
    if g.n < 1:
        raise ValueError("vertex-criticality needs at least one vertex")
    dl = _deadline(budget_s)
    chi, _ = chromatic_number(g, deadline=dl)
    for v in range(g.n):
        h = delete_vertex(g, v)
        if h.n and is_k_colorable(h, chi - 1, deadline=dl) is None:
            return False
        if not h.n and chi > 1:
            return False
    return True


@dataclass
class VerificationRecord:
    """One graph's Borodin-Kostochka check.

    ``in_hypothesis`` is ``delta >= 9``; outside it the bound is still
    evaluated, but a failure there is not a violation.
    """

    n: int
    m: int
    delta: int
    omega: int
    chi: int | None
    rhs: int
    holds: bool | None
    status: str
    millis: float
    coloring: list[int] | None = None
    in_hypothesis: bool = False
    member: bool | None = None
    graph6: str | None = None
    extra: dict = field(default_factory=dict)

    @property
    def violation(self) -> bool:
        return self.status == EXACT and self.in_hypothesis and self.holds is False

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> VerificationRecord:
        return cls(**d)

    CSV_COLUMNS = ("n", "m", "delta", "omega", "chi", "rhs", "holds", "status", "millis")

    def csv_row(self) -> list[str]:
        if not self.in_hypothesis:
            holds = "N/A"
        elif self.holds is None:
            holds = ""
        else:
            holds = str(self.holds).lower()
        chi = "" if self.chi is None else str(self.chi)
        return [
            str(self.n),
            str(self.m),
            str(self.delta),
            str(self.omega),
            chi,
            str(self.rhs),
            holds,
            self.status,
            f"{self.millis:.3f}",
        ]


def verify_bk(g: Graph, budget_s: float | None = DEFAULT_BUDGET_S) -> VerificationRecord:
    """Compute Delta, omega, chi and whether ``chi <= max(Delta - 1, omega)``.

    A solver timeout is recorded in ``status``; it never propagates.
    """
    t0 = time.perf_counter()
    delta = max_degree(g)
    omega, _ = clique_number(g)
    rhs = max(delta - 1, omega)
    try:
        chi, col = chromatic_number(g, budget_s)
        status = EXACT
        holds = chi <= rhs
        coloring = list(col.colors)
    except SolverTimeout:
        chi = None
        status = TIMEOUT
        holds = None
        coloring = None
    return VerificationRecord(
        n=g.n,
        m=g.m,
        delta=delta,
        omega=omega,
        chi=chi,
        rhs=rhs,
        holds=holds,
        status=status,
        millis=(time.perf_counter() - t0) * 1000.0,
        coloring=coloring,
        in_hypothesis=delta >= BK_MIN_DELTA,
    )
