"""Time the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--seed S]

Both backends run on identical inputs and their answers are compared, so a
speedup is only reported for agreeing results.
"""

import argparse
import random
import time

from bkgraph import _pykernels
from bkgraph.generators import complete, cycle
from bkgraph.graph import Graph
from bkgraph.recognizers import P6

try:
    from bkgraph import _kernels
except ImportError:
    _kernels = None


def gnp(rng, n, p):
    return Graph.from_edges(n, [(i, j) for j in range(n) for i in range(j) if rng.random() < p])


def workloads(seed):
    rng = random.Random(seed)
    dense = [gnp(rng, 60, 0.5) for _ in range(20)]
    medium = [gnp(rng, 24, 0.3) for _ in range(20)]
    small = [gnp(rng, 10, rng.random()) for _ in range(200)]
    hard = gnp(random.Random(3), 56, 0.5)
    return {
        "max_clique G(60,.5) x20": ("max_clique", [(g.adj, g.n) for g in dense]),
        "color_search G(24,.3) k=4 x20": ("color_search", [(g.adj, g.n, 4, 0.0) for g in medium]),
        "color_search G(56,.5) k=10": ("color_search", [(hard.adj, hard.n, 10, 0.0)]),
        "find_induced P6 in G(24,.3) x20": ("find_induced", [(g.adj, g.n, P6.graph.adj, 6, 0) for g in medium]),
        "find_induced P6 in C40": ("find_induced", [(cycle(40).adj, 40, P6.graph.adj, 6, 0)]),
        "canonical_code n=10 x200": ("canonical_code", [(g.adj, g.n) for g in small]),
        "canonical_code K10": ("canonical_code", [(complete(10).adj, 10)]),
    }


def run(mod, name, args_list, repeat):
    fn = getattr(mod, name)
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = [fn(*args) for args in args_list]
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    if _kernels is None:
        raise SystemExit("compiled kernels are not built; reinstall with Cython available")

    print(f"{'workload':34} {'python ms':>11} {'compiled ms':>12} {'speedup':>8}")
    for label, (name, args_list) in workloads(args.seed).items():
        tp, out_p = run(_pykernels, name, args_list, args.repeat)
        tc, out_c = run(_kernels, name, args_list, args.repeat)
        if name == "max_clique":
            agree = [a.bit_count() for a in out_p] == [b.bit_count() for b in out_c]
        else:
            agree = out_p == out_c
        speed = f"{tp / tc:7.1f}x" if agree and tc > 0 else "  DIFFER"
        print(f"{label:34} {tp * 1e3:11.2f} {tc * 1e3:12.2f} {speed:>8}")


if __name__ == "__main__":
    main()
