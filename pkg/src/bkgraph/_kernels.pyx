# cython: language_level=3
"""Compiled search kernels (64-bit bitsets).

Same signatures, same search order and same results as ``_pykernels``;
graphs are limited to 64 vertices, which is the package-wide limit.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free, calloc

import time

from bkgraph import _pykernels

cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long)
    int ctz64 "__builtin_ctzll"(unsigned long long)

FOUND = 1
INFEASIBLE = 0
TIMEOUT = -1

cdef enum:
    CHECK_EVERY = 1024


cdef inline uint64_t full_mask(int n):
    if n >= 64:
        return <uint64_t>0xFFFFFFFFFFFFFFFF
    return ((<uint64_t>1) << n) - 1


cdef int load_adj(object adj, int n, uint64_t* out) except -1:
    cdef int v
    for v in range(n):
        out[v] = <uint64_t>adj[v]
    return 0


# ---------------------------------------------------------------- clique

cdef struct CliqueCtx:
    uint64_t* adj
    int best
    uint64_t bestmask


cdef void clique_expand(CliqueCtx* ctx, uint64_t R, int size, uint64_t P):
    cdef int order_v[64]
    cdef int order_c[64]
    cdef int cnt = 0
    cdef int color = 0
    cdef uint64_t U = P
    cdef uint64_t Q, low, NP, bit
    cdef int v, c, idx
    while U:
        color += 1
        Q = U
        while Q:
            low = Q & (~Q + 1)
            v = ctz64(low)
            U &= ~low
            Q &= ~ctx.adj[v] & ~low
            order_v[cnt] = v
            order_c[cnt] = color
            cnt += 1
    for idx in range(cnt - 1, -1, -1):
        v = order_v[idx]
        c = order_c[idx]
        if size + c <= ctx.best:
            return
        bit = (<uint64_t>1) << v
        NP = P & ctx.adj[v]
        if NP:
            clique_expand(ctx, R | bit, size + 1, NP)
        elif size + 1 > ctx.best:
            ctx.best = size + 1
            ctx.bestmask = R | bit
        P &= ~bit


def max_clique(adj, int n):
    """Return a bitmask of a maximum clique."""
    cdef uint64_t a[64]
    cdef CliqueCtx ctx
    if n == 0:
        return 0
    load_adj(adj, n, a)
    ctx.adj = a
    ctx.best = 1
    ctx.bestmask = 1
    clique_expand(&ctx, 0, 0, full_mask(n))
    return ctx.bestmask


# ---------------------------------------------------------------- coloring

cdef struct ColorCtx:
    int n
    int k
    uint64_t* adj
    int* deg
    int* colors
    int* cnt
    uint64_t* sat
    int* nsat
    long long nodes
    double deadline


cdef int pick_vertex(ColorCtx* ctx):
    cdef int best = -1, bs = -1, bd = -1, v, s
    for v in range(ctx.n):
        if ctx.colors[v]:
            continue
        s = ctx.nsat[v]
        if s > bs or (s == bs and ctx.deg[v] > bd):
            best = v
            bs = s
            bd = ctx.deg[v]
    return best


cdef int color_rec(ColorCtx* ctx, int depth, int maxc) except -2:
    cdef int v, c, w, limit, r, stride
    cdef uint64_t forb, m, low
    if depth == ctx.n:
        return 1
    ctx.nodes += 1
    if ctx.deadline > 0 and ctx.nodes % CHECK_EVERY == 0:
        if time.perf_counter() > ctx.deadline:
            return -1
    v = pick_vertex(ctx)
    forb = ctx.sat[v]
    limit = maxc + 1
    if limit > ctx.k:
        limit = ctx.k
    stride = ctx.k + 1
    for c in range(1, limit + 1):
        if (forb >> (c - 1)) & 1:
            continue
        ctx.colors[v] = c
        m = ctx.adj[v]
        while m:
            low = m & (~m + 1)
            w = ctz64(low)
            m ^= low
            ctx.cnt[w * stride + c] += 1
            if ctx.cnt[w * stride + c] == 1:
                ctx.sat[w] |= (<uint64_t>1) << (c - 1)
                ctx.nsat[w] += 1
        r = color_rec(ctx, depth + 1, c if c > maxc else maxc)
        if r != 0:
            return r
        m = ctx.adj[v]
        while m:
            low = m & (~m + 1)
            w = ctz64(low)
            m ^= low
            ctx.cnt[w * stride + c] -= 1
            if ctx.cnt[w * stride + c] == 0:
                ctx.sat[w] &= ~((<uint64_t>1) << (c - 1))
                ctx.nsat[w] -= 1
        ctx.colors[v] = 0
    return 0


def color_search(adj, int n, int k, double deadline=0.0):
    """Decide k-colorability; returns ``(status, colors)``."""
    cdef uint64_t a[64]
    cdef uint64_t sat[64]
    cdef int deg[64]
    cdef int colors[64]
    cdef int nsat[64]
    cdef ColorCtx ctx
    cdef int v, r
    if n == 0:
        return FOUND, []
    if k <= 0:
        return INFEASIBLE, None
    if k > n:
        k = n
    load_adj(adj, n, a)
    for v in range(n):
        deg[v] = popcount64(a[v])
        colors[v] = 0
        sat[v] = 0
        nsat[v] = 0
    ctx.n = n
    ctx.k = k
    ctx.adj = a
    ctx.deg = deg
    ctx.colors = colors
    ctx.sat = sat
    ctx.nsat = nsat
    ctx.nodes = 0
    ctx.deadline = deadline
    ctx.cnt = <int*>calloc(n * (k + 1), sizeof(int))
    if ctx.cnt == NULL:
        raise MemoryError()
    try:
        r = color_rec(&ctx, 0, 0)
    finally:
        free(ctx.cnt)
    if r == 1:
        return FOUND, [colors[v] for v in range(n)]
    if r == -1:
        return TIMEOUT, None
    return INFEASIBLE, None


# ---------------------------------------------------------------- induced search

cdef struct InducedCtx:
    int n
    int p
    uint64_t* adj
    uint64_t* pat
    uint64_t* okdeg
    int* mapping
    uint64_t required
    uint64_t full


cdef int induced_rec(InducedCtx* ctx, int t, uint64_t used):
    cdef uint64_t need, cand, row, low
    cdef int remaining, nneed, s
    if t == ctx.p:
        return 1
    need = ctx.required & ~used
    remaining = ctx.p - t
    nneed = popcount64(need)
    if nneed > remaining:
        return 0
    cand = ctx.full & ~used & ctx.okdeg[t]
    row = ctx.pat[t]
    for s in range(t):
        if (row >> s) & 1:
            cand &= ctx.adj[ctx.mapping[s]]
        else:
            cand &= ~ctx.adj[ctx.mapping[s]]
    if nneed == remaining:
        cand &= need
    while cand:
        low = cand & (~cand + 1)
        ctx.mapping[t] = ctz64(low)
        if induced_rec(ctx, t + 1, used | low):
            return 1
        cand ^= low
    return 0


def find_induced(adj, int n, pat, int p, required=0):
    """Lexicographically first induced copy of a pattern, or ``None``."""
    cdef uint64_t a[64]
    cdef uint64_t pm[64]
    cdef uint64_t okdeg[64]
    cdef int mapping[64]
    cdef int degs[64]
    cdef InducedCtx ctx
    cdef int t, v, pd
    cdef uint64_t m
    if p == 0:
        return () if required == 0 else None
    if p > n:
        return None
    load_adj(adj, n, a)
    for v in range(n):
        degs[v] = popcount64(a[v])
    for t in range(p):
        pm[t] = <uint64_t>pat[t]
        pd = popcount64(pm[t])
        m = 0
        for v in range(n):
            if degs[v] >= pd:
                m |= (<uint64_t>1) << v
        okdeg[t] = m
    ctx.n = n
    ctx.p = p
    ctx.adj = a
    ctx.pat = pm
    ctx.okdeg = okdeg
    ctx.mapping = mapping
    ctx.required = <uint64_t>required
    ctx.full = full_mask(n)
    if induced_rec(&ctx, 0, 0):
        return tuple([mapping[t] for t in range(p)])
    return None


# ---------------------------------------------------------------- canonical form

cdef struct CanonCtx:
    int n
    int nbits
    uint64_t* adj
    int* deg
    int* cell
    int* cls
    int* order
    int* used
    uint64_t best
    int have


cdef void canon_rec(CanonCtx* ctx, int j, uint64_t code):
    cdef int v, i, done
    cdef uint64_t col, ncode, row
    cdef uint64_t tried = 0
    if j == ctx.n:
        if not ctx.have or code < ctx.best:
            ctx.best = code
            ctx.have = 1
        return
    for v in range(ctx.n):
        if ctx.used[v] or ctx.deg[v] != ctx.cell[j] or (tried >> ctx.cls[v]) & 1:
            continue
        tried |= (<uint64_t>1) << ctx.cls[v]
        col = 0
        row = ctx.adj[v]
        for i in range(j):
            col = (col << 1) | ((row >> ctx.order[i]) & 1)
        ncode = (code << j) | col
        if ctx.have:
            done = j * (j + 1) // 2
            if ncode > (ctx.best >> (ctx.nbits - done)):
                continue
        ctx.used[v] = 1
        ctx.order[j] = v
        canon_rec(ctx, j + 1, ncode)
        ctx.used[v] = 0


def canonical_code(adj, int n):
    """Canonical integer code; see ``_pykernels.canonical_code``."""
    cdef uint64_t a[64]
    cdef int deg[64]
    cdef int cell[64]
    cdef int cls[64]
    cdef int order[64]
    cdef int used[64]
    cdef CanonCtx ctx
    cdef int v
    if n <= 1:
        return 0
    if n > 11:
        # code no longer fits a machine word
        return _pykernels.canonical_code(adj, n)
    load_adj(adj, n, a)
    for v in range(n):
        deg[v] = popcount64(a[v])
        used[v] = 0
    srt = sorted([deg[v] for v in range(n)])
    twins = _pykernels.twin_classes(adj, n)
    for v in range(n):
        cell[v] = srt[v]
        cls[v] = twins[v]
    ctx.n = n
    ctx.nbits = n * (n - 1) // 2
    ctx.adj = a
    ctx.deg = deg
    ctx.cell = cell
    ctx.cls = cls
    ctx.order = order
    ctx.used = used
    ctx.best = 0
    ctx.have = 0
    canon_rec(&ctx, 0, 0)
    return ctx.best
