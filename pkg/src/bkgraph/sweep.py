"""Sampler -> verify_bk -> bk_color over many seeded graphs."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from bkgraph.generators import SamplerConfig, SamplerInfeasible, sample_class_member
from bkgraph.graph import is_proper, to_graph6
from bkgraph.kempe import bk_color
from bkgraph.recognizers import is_member
from bkgraph.solvers import EXACT, TIMEOUT, VerificationRecord, verify_bk

RULE_NAMES = ("R1", "R2", "R3", "R4")


@dataclass
class SweepConfig:
    seed: int
    count: int = 100
    n_min: int = 12
    n_max: int = 40
    delta_min: int = 9
    delta_max: int = 12
    member_filter: bool = True
    budget_s: float = 10.0
    burn_in_factor: int = 25
    jobs: int = 1

    def graph_params(self, index: int) -> tuple[int, int]:
        """``(n, sampler_seed)`` for graph ``index``; a pure function of the config."""
        rng = random.Random(f"{self.seed}:{index}")
        lo = max(self.n_min, self.delta_min + 1)
        if lo > self.n_max:
            raise ValueError(f"no n in [{self.n_min}, {self.n_max}] admits delta {self.delta_min}")
        return rng.randint(lo, self.n_max), rng.getrandbits(32)


@dataclass
class SweepReport:
    config: dict
    rows: list[dict]
    aggregate: dict
    violations: list[int] = field(default_factory=list)
    anomalies: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> SweepReport:
        return cls(**d)

    @property
    def exit_code(self) -> int:
        if self.violations or self.anomalies:
            return 1
        tested = self.aggregate["graphs"]
        if self.aggregate["infeasible"] == tested and tested:
            return 3
        if tested and self.aggregate["timeouts"] * 2 > tested:
            return 3
        return 0


def _one(args: tuple[SweepConfig, int]) -> dict:
    cfg, index = args
    n, sseed = cfg.graph_params(index)
    scfg = SamplerConfig(
        n=n,
        delta_min=cfg.delta_min,
        delta_max=cfg.delta_max,
        seed=sseed,
        burn_in=cfg.burn_in_factor * n * n,
        member_filter=cfg.member_filter,
    )
    try:
        g = sample_class_member(scfg)
    except SamplerInfeasible as exc:
        return {"index": index, "n": n, "infeasible": str(exc)}
    rec = verify_bk(g, cfg.budget_s)
    rec.member = is_member(g)
    rec.graph6 = to_graph6(g).decode()
    bk = bk_color(g, cfg.budget_s)
    sound = True
    if bk.status == "COLORED":
        sound = is_proper(g, bk.coloring) and max(bk.coloring.colors, default=0) <= bk.k
    rec.extra = {
        "index": index,
        "bk_status": bk.status,
        "bk_sound": sound,
        "bk_stats": bk.stats,
        "bk_diagnostic": bk.diagnostic,
    }
    return rec.to_dict()


def run_sweep(cfg: SweepConfig) -> SweepReport:
    tasks = [(cfg, i) for i in range(cfg.count)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(_one, tasks, chunksize=4))
    else:
        rows = [_one(t) for t in tasks]

    agg = {
        "graphs": len(rows),
        "infeasible": 0,
        "exact": 0,
        "timeouts": 0,
        "in_hypothesis": 0,
        "members": 0,
        "holds": 0,
        "violations": 0,
        "bk_colored": 0,
        "bk_obstruction": 0,
        "bk_give_up": 0,
        "stuck_vertices": 0,
        "resolved_free": 0,
        "resolved_rules": {r: 0 for r in RULE_NAMES},
        "unresolved": 0,
        "fallbacks": 0,
    }
    violations, anomalies = [], []
    for row in rows:
        if "infeasible" in row:
            agg["infeasible"] += 1
            continue
        rec = VerificationRecord.from_dict(row)
        idx = rec.extra["index"]
        agg["members"] += bool(rec.member)
        agg["in_hypothesis"] += rec.in_hypothesis
        if rec.status == TIMEOUT:
            agg["timeouts"] += 1
        else:
            agg["exact"] += 1
            if rec.in_hypothesis and rec.holds:
                agg["holds"] += 1
        if rec.violation:
            violations.append(idx)
        bk = rec.extra["bk_status"]
        agg[{"COLORED": "bk_colored", "OBSTRUCTION": "bk_obstruction", "GIVE_UP": "bk_give_up"}[bk]] += 1
        st = rec.extra["bk_stats"]
        agg["stuck_vertices"] += st["stuck"]
        agg["resolved_free"] += st["resolved_free"]
        for r in RULE_NAMES:
            agg["resolved_rules"][r] += st["resolved_rules"][r]
        agg["unresolved"] += st["unresolved"]
        agg["fallbacks"] += st["fallback"]
        # bk_color must deliver whenever a (Delta-1)-coloring is known to exist
        deliverable = rec.status == EXACT and rec.omega <= rec.delta - 1 and rec.chi <= rec.delta - 1
        if not rec.extra["bk_sound"] or (deliverable and bk != "COLORED"):
            anomalies.append(idx)
    agg["violations"] = len(violations)
    stuck = agg["stuck_vertices"]
    by_rules = sum(agg["resolved_rules"].values())
    agg["rule_resolution_fraction"] = (by_rules / stuck) if stuck else None
    config = asdict(cfg)
    return SweepReport(config=config, rows=rows, aggregate=agg, violations=violations, anomalies=anomalies)
