"""Pure-Python search kernels.

Reference implementation of the hot loops. ``_kernels.pyx`` mirrors every
function here with the same signature and, crucially, the same search
order, so both backends return identical witnesses and colorings.

Adjacency is a list of ``int`` bitmasks, bit ``w`` of ``adj[v]`` set iff
``v ~ w``.
"""

import time

FOUND = 1
INFEASIBLE = 0
TIMEOUT = -1

_CHECK_EVERY = 1024


class _Timeout(Exception):
    pass


def max_clique(adj, n):
    """Return a bitmask of a maximum clique.

    Branch and bound over bitsets with a greedy coloring bound (MCQ style).
    """
    if n == 0:
        return 0
    best = [1, 1]  # size, mask; vertex 0 alone is a clique

    def color_sort(P):
        order = []
        color = 0
        U = P
        while U:
            color += 1
            Q = U
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                U &= ~low
                Q &= ~adj[v] & ~low
                order.append((v, color))
        return order

    def expand(R, size, P):
        order = color_sort(P)
        for idx in range(len(order) - 1, -1, -1):
            v, c = order[idx]
            if size + c <= best[0]:
                return
            bit = 1 << v
            NP = P & adj[v]
            if NP:
                expand(R | bit, size + 1, NP)
            elif size + 1 > best[0]:
                best[0] = size + 1
                best[1] = R | bit
            P &= ~bit

    expand(0, 0, (1 << n) - 1)
    return best[1]


def color_search(adj, n, k, deadline=0.0):
    """Decide k-colorability by DSATUR-ordered backtracking.

    Returns ``(status, colors)`` where ``colors`` is a list of values in
    ``1..k`` when status is FOUND. A new color is only opened as
    ``max used + 1``, which removes palette permutations from the tree.
    ``deadline`` is a ``time.perf_counter()`` value; 0 disables it.
    """
    if n == 0:
        return FOUND, []
    if k <= 0:
        return INFEASIBLE, None
    k = min(k, n)
    nbrs = []
    deg = []
    for v in range(n):
        row = []
        m = adj[v]
        while m:
            low = m & -m
            row.append(low.bit_length() - 1)
            m ^= low
        nbrs.append(row)
        deg.append(len(row))
    colors = [0] * n
    cnt = [[0] * (k + 1) for _ in range(n)]
    sat = [0] * n
    nsat = [0] * n
    nodes = [0]

    def pick():
        best = -1
        bs = -1
        bd = -1
        for v in range(n):
            if colors[v]:
                continue
            s = nsat[v]
            if s > bs or (s == bs and deg[v] > bd):
                best, bs, bd = v, s, deg[v]
        return best

    def rec(depth, maxc):
        if depth == n:
            return True
        nodes[0] += 1
        if deadline and nodes[0] % _CHECK_EVERY == 0 and time.perf_counter() > deadline:
            raise _Timeout
        v = pick()
        forb = sat[v]
        limit = min(k, maxc + 1)
        for c in range(1, limit + 1):
            if forb >> c & 1:
                continue
            colors[v] = c
            for w in nbrs[v]:
                cw = cnt[w]
                cw[c] += 1
                if cw[c] == 1:
                    sat[w] |= 1 << c
                    nsat[w] += 1
            if rec(depth + 1, c if c > maxc else maxc):
                return True
            for w in nbrs[v]:
                cw = cnt[w]
                cw[c] -= 1
                if cw[c] == 0:
                    sat[w] &= ~(1 << c)
                    nsat[w] -= 1
            colors[v] = 0
        return False

    try:
        ok = rec(0, 0)
    except _Timeout:
        return TIMEOUT, None
    return (FOUND, colors) if ok else (INFEASIBLE, None)


def find_induced(adj, n, pat, p, required=0):
    """Find an induced copy of a pattern graph.

    ``pat[t]`` is the pattern adjacency bitmask of pattern vertex ``t``.
    Pattern vertices are mapped in index order and graph candidates are
    tried in ascending order, so the first hit is the lexicographically
    smallest mapped tuple. ``required`` is a vertex bitmask that must be
    contained in the image. Returns a tuple or ``None``.
    """
    if p == 0:
        return () if required == 0 else None
    if p > n:
        return None
    full = (1 << n) - 1
    pdeg = [bin(pat[t]).count("1") for t in range(p)]
    okdeg = [0] * p
    for t in range(p):
        m = 0
        for v in range(n):
            if bin(adj[v]).count("1") >= pdeg[t]:
                m |= 1 << v
        okdeg[t] = m
    mapping = [0] * p

    def rec(t, used):
        if t == p:
            return True
        need = required & ~used
        remaining = p - t
        nneed = bin(need).count("1")
        if nneed > remaining:
            return False
        cand = full & ~used & okdeg[t]
        row = pat[t]
        for s in range(t):
            if row >> s & 1:
                cand &= adj[mapping[s]]
            else:
                cand &= ~adj[mapping[s]]
        if nneed == remaining:
            cand &= need
        while cand:
            low = cand & -cand
            mapping[t] = low.bit_length() - 1
            if rec(t + 1, used | low):
                return True
            cand ^= low
        return False

    if rec(0, 0):
        return tuple(mapping)
    return None


def twin_classes(adj, n):
    """Smallest index of each vertex's twin class.

    ``u`` and ``v`` are twins when ``N(u) - v == N(v) - u``; exchanging them
    is an automorphism, so orderings that only permute twins give equal codes.
    """
    cls = list(range(n))
    for v in range(n):
        for u in range(v):
            if cls[u] == u and adj[u] & ~(1 << v) == adj[v] & ~(1 << u):
                cls[v] = u
                break
    return cls


def canonical_code(adj, n):
    """Canonical form of a small graph as an integer.

    Vertices are grouped into cells by ascending degree; the code is the
    minimum upper-triangle bitstring (column-major pair order, first pair
    most significant) over all orderings that keep the cells in place.
    Only the first unused member of each twin class is tried at a position.
    """
    if n <= 1:
        return 0
    deg = [bin(adj[v]).count("1") for v in range(n)]
    cls = twin_classes(adj, n)
    cell_of_pos = sorted(deg)
    nbits = n * (n - 1) // 2
    order = [0] * n
    used = [False] * n
    best = [None]

    def rec(j, code):
        # code holds the bits of columns 1..j-1
        if j == n:
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        want = cell_of_pos[j]
        tried = set()
        for v in range(n):
            if used[v] or deg[v] != want or cls[v] in tried:
                continue
            tried.add(cls[v])
            col = 0
            row = adj[v]
            for i in range(j):
                col = (col << 1) | (row >> order[i] & 1)
            ncode = (code << j) | col
            if best[0] is not None:
                done = j * (j + 1) // 2
                if ncode > best[0] >> (nbits - done):
                    continue
            used[v] = True
            order[j] = v
            rec(j + 1, ncode)
            used[v] = False

    rec(0, 0)
    return best[0]
