"""Numba kernels for the hot inner loops.

Every function here has a vectorized numpy twin in ``_fallback`` with the
same signature and result contract; call sites pick one via ``_backend``.
All vertex ids are int64, flag arrays are uint8, hash arithmetic is uint64.
"""

import numpy as np

from ._backend import njit, prange

# ---------------------------------------------------------------------------
# union-find walks


@njit(cache=True, parallel=True)
def find_roots(parent, nodes, compress):
    """Root of each node; with ``compress`` re-walk each path writing the root.

    Concurrent compression writes are benign: every write stores the current
    root of the written node's tree, so racing writers agree on the value.
    """
    m = nodes.shape[0]
    out = np.empty(m, np.int64)
    for i in prange(m):
        v = nodes[i]
        r = v
        while parent[r] != r:
            r = parent[r]
        if compress:
            w = v
            while w != r:
                nxt = parent[w]
                parent[w] = r
                w = nxt
        out[i] = r
    return out


@njit(cache=True)
def seq_apply_edges(parent, size, us, vs, compress):
    """Textbook one-edge-at-a-time unions; returns the number performed.

    Union by size; on equal sizes the first argument's root wins.
    """
    unions = 0
    for i in range(us.shape[0]):
        u = us[i]
        ru = u
        while parent[ru] != ru:
            ru = parent[ru]
        if compress:
            w = u
            while w != ru:
                nxt = parent[w]
                parent[w] = ru
                w = nxt
        v = vs[i]
        rv = v
        while parent[rv] != rv:
            rv = parent[rv]
        if compress:
            w = v
            while w != rv:
                nxt = parent[w]
                parent[w] = rv
                w = nxt
        if ru != rv:
            if size[rv] > size[ru]:
                ru, rv = rv, ru
            parent[rv] = ru
            size[ru] += size[rv]
            unions += 1
    return unions


@njit(cache=True)
def seq_answer_queries(parent, us, vs, compress):
    m = us.shape[0]
    out = np.empty(m, np.uint8)
    for i in range(m):
        u = us[i]
        ru = u
        while parent[ru] != ru:
            ru = parent[ru]
        if compress:
            w = u
            while w != ru:
                nxt = parent[w]
                parent[w] = ru
                w = nxt
        v = vs[i]
        rv = v
        while parent[rv] != rv:
            rv = parent[rv]
        if compress:
            w = v
            while w != rv:
                nxt = parent[w]
                parent[w] = rv
                w = nxt
        out[i] = 1 if ru == rv else 0
    return out


@njit(cache=True, parallel=True)
def count_roots(parent):
    n = parent.shape[0]
    c = 0
    for v in prange(n):
        if parent[v] == v:
            c += 1
    return c


@njit(cache=True, parallel=True)
def max_root_distance(parent):
    n = parent.shape[0]
    best = 0
    for v in prange(n):
        d = 0
        r = v
        while parent[r] != r:
            r = parent[r]
            d += 1
        best = max(best, d)
    return best


# ---------------------------------------------------------------------------
# tournament joins over component member lists


@njit(cache=True, parallel=True)
def join_tournament(parent, size, members, offsets, parallel_pairs):
    """Link all roots of each component into one tree, component-parallel.

    ``members`` is grouped by ``offsets`` (CSR layout) and is clobbered:
    after each round slot ``i`` holds the winner of its pair.  Rounds double
    the pairing stride, so a component of k roots takes ceil(log2 k) rounds
    and exactly k-1 unions.  Returns (unions, rounds).

    With ``parallel_pairs`` the pair loop of each round runs in parallel
    (useful when one component dominates); pairs within a round touch
    disjoint roots either way.
    """
    ncomp = offsets.shape[0] - 1
    maxlen = 0
    total = 0
    for c in range(ncomp):
        ln = offsets[c + 1] - offsets[c]
        total += ln - 1
        if ln > maxlen:
            maxlen = ln
    rounds = 0
    stride = 1
    while stride < maxlen:
        two = 2 * stride
        if parallel_pairs and ncomp == 1:
            e = offsets[1]
            npairs = (e - stride + two - 1) // two
            for pi in prange(npairs):
                i = pi * two
                a = members[i]
                b = members[i + stride]
                if size[b] > size[a]:
                    parent[a] = b
                    size[b] += size[a]
                    members[i] = b
                else:
                    parent[b] = a
                    size[a] += size[b]
        else:
            for c in prange(ncomp):
                s = offsets[c]
                e = offsets[c + 1]
                i = s
                while i + stride < e:
                    a = members[i]
                    b = members[i + stride]
                    if size[b] > size[a]:
                        parent[a] = b
                        size[b] += size[a]
                        members[i] = b
                    else:
                        parent[b] = a
                        size[a] += size[b]
                    i += two
        stride = two
        rounds += 1
    return total, rounds


# ---------------------------------------------------------------------------
# sequence primitives


@njit(cache=True)
def counting_sort_perm(keys, key_bound):
    """Stable counting sort; returns the permutation ordering keys ascending."""
    n = keys.shape[0]
    counts = np.zeros(key_bound + 1, np.int64)
    for i in range(n):
        counts[keys[i] + 1] += 1
    for k in range(key_bound):
        counts[k + 1] += counts[k]
    perm = np.empty(n, np.int64)
    for i in range(n):
        k = keys[i]
        perm[counts[k]] = i
        counts[k] += 1
    return perm


@njit(cache=True, parallel=True)
def counting_sort_perm_chunked(keys, key_bound, nchunks):
    """Chunked variant: per-chunk histograms, then a stable scatter.

    Cursor rows are owned per chunk, so the scatter is race free; chunk-major
    ordering within a key preserves global stability.
    """
    n = keys.shape[0]
    chunk = (n + nchunks - 1) // nchunks
    counts = np.zeros((nchunks, key_bound), np.int64)
    for c in prange(nchunks):
        lo = c * chunk
        hi = min(n, lo + chunk)
        for i in range(lo, hi):
            counts[c, keys[i]] += 1
    run = 0
    for k in range(key_bound):
        for c in range(nchunks):
            v = counts[c, k]
            counts[c, k] = run
            run += v
    perm = np.empty(n, np.int64)
    for c in prange(nchunks):
        lo = c * chunk
        hi = min(n, lo + chunk)
        for i in range(lo, hi):
            k = keys[i]
            perm[counts[c, k]] = i
            counts[c, k] += 1
    return perm


@njit(cache=True)
def exclusive_scan(xs):
    n = xs.shape[0]
    out = np.empty(n, np.int64)
    run = 0
    for i in range(n):
        out[i] = run
        run += xs[i]
    return out, run


_MIX = np.uint64(0x9E3779B97F4A7C15)


@njit(cache=True)
def _table_slot(x, shift):
    return (np.uint64(x) * _MIX) >> shift


@njit(cache=True)
def dedup_hash(xs):
    """Distinct values of ``xs`` (non-negative ints), first-appearance order.

    Linear-probing claim into a table of ~2x capacity, then compact; the
    claim pass is a single serial sweep (idempotent for repeated keys).
    """
    n = xs.shape[0]
    out = np.empty(n, np.int64)
    if n == 0:
        return out
    cap = 1
    bits = 0
    while cap < 2 * n:
        cap <<= 1
        bits += 1
    shift = np.uint64(64 - bits)
    mask = cap - 1
    table = np.full(cap, -1, np.int64)
    cnt = 0
    for i in range(n):
        x = xs[i]
        slot = np.int64(_table_slot(x, shift)) & mask
        while True:
            cur = table[slot]
            if cur == x:
                break
            if cur == -1:
                table[slot] = x
                out[cnt] = x
                cnt += 1
                break
            slot = (slot + 1) & mask
    return out[:cnt].copy()


@njit(cache=True)
def build_rank_table(keys):
    """Open-addressing map from distinct ``keys`` to their positions."""
    k = keys.shape[0]
    cap = 1
    bits = 0
    while cap < 2 * k + 2:
        cap <<= 1
        bits += 1
    shift = np.uint64(64 - bits)
    tkey = np.full(cap, -1, np.int64)
    trank = np.empty(cap, np.int64)
    mask = cap - 1
    for r in range(k):
        x = keys[r]
        slot = np.int64(_table_slot(x, shift)) & mask
        while tkey[slot] != -1:
            slot = (slot + 1) & mask
        tkey[slot] = x
        trank[slot] = r
    return tkey, trank, shift


@njit(cache=True, parallel=True)
def lookup_ranks(tkey, trank, shift, xs):
    n = xs.shape[0]
    mask = tkey.shape[0] - 1
    out = np.empty(n, np.int64)
    for i in prange(n):
        x = xs[i]
        slot = np.int64(_table_slot(x, shift)) & mask
        while tkey[slot] != x:
            slot = (slot + 1) & mask
        out[i] = trank[slot]
    return out


@njit(cache=True)
def hook_minimum(labels, losers, winners):
    """labels[loser] <- min(labels[loser], winner) over all proposals."""
    for i in range(losers.shape[0]):
        lo = losers[i]
        w = winners[i]
        if w < labels[lo]:
            labels[lo] = w


# ---------------------------------------------------------------------------
# coordinated multi-source find


@njit(cache=True)
def bulk_find_phase1(parent, nodes, visited, nil):
    """Merged upward walk from all query nodes, recording hop trails.

    Level 0 holds one (node, nil) seed per query.  Each later level records
    (parent[v], v) for every frontier node v that is not a root; the next
    frontier is the distinct unvisited hop targets (first-appearance order).
    ``visited`` must be all-zero on entry and is restored before returning.

    Returns (trail_from, trail_to, level_sizes, roots, frontier_nodes).
    """
    m = nodes.shape[0]
    n = parent.shape[0]
    cap = m + min(n, m * 64) + 1
    tfrom = np.empty(cap, np.int64)
    tto = np.empty(cap, np.int64)
    levels = np.zeros(70, np.int64)
    fbuf = np.empty(min(n, cap), np.int64)
    roots = np.empty(m, np.int64)
    cnt = 0
    for i in range(m):
        tfrom[cnt] = nodes[i]
        tto[cnt] = nil
        cnt += 1
    levels[0] = m
    nlev = 1
    fcnt = 0
    for i in range(m):
        v = nodes[i]
        if visited[v] == 0:
            visited[v] = 1
            fbuf[fcnt] = v
            fcnt += 1
    rcnt = 0
    flo = 0
    fhi = fcnt
    while fhi > flo:
        hop_start = cnt
        for idx in range(flo, fhi):
            v = fbuf[idx]
            p = parent[v]
            if p == v:
                roots[rcnt] = v
                rcnt += 1
            else:
                tfrom[cnt] = p
                tto[cnt] = v
                cnt += 1
        levels[nlev] = cnt - hop_start
        nlev += 1
        for j in range(hop_start, cnt):
            t = tfrom[j]
            if visited[t] == 0:
                visited[t] = 1
                fbuf[fcnt] = t
                fcnt += 1
        flo = fhi
        fhi = fcnt
    for idx in range(fcnt):
        visited[fbuf[idx]] = 0
    return (tfrom[:cnt].copy(), tto[:cnt].copy(), levels[:nlev].copy(),
            roots[:rcnt].copy(), fbuf[:fcnt].copy())


@njit(cache=True)
def hash_u64(x, ha, hb, rho):
    return np.int64(((ha * np.uint64(x) + hb) >> np.uint64(32)) % rho)


@njit(cache=True, parallel=True)
def hash_ids(xs, ha, hb, rho):
    n = xs.shape[0]
    out = np.empty(n, np.int64)
    for i in prange(n):
        out[i] = hash_u64(xs[i], ha, hb, rho)
    return out


@njit(cache=True)
def bucket_index(hashes, rho):
    """Stable grouping of pair indices by hash bucket.

    Returns (perm, offsets): offsets[h] marks the first position of bucket h
    in the permuted pair array, offsets[rho] equals the pair count.
    """
    lam = hashes.shape[0]
    offsets = np.zeros(rho + 1, np.int64)
    for i in range(lam):
        offsets[hashes[i] + 1] += 1
    for k in range(rho):
        offsets[k + 1] += offsets[k]
    cursor = offsets[:rho].copy()
    perm = np.empty(lam, np.int64)
    for i in range(lam):
        h = hashes[i]
        perm[cursor[h]] = i
        cursor[h] += 1
    return perm, offsets


@njit(cache=True, parallel=True)
def bulk_find_phase2(parent, bfrom, bto, offsets, ha, hb, rho, roots, nil):
    """Reverse walk from the roots along the recorded trails.

    Every visited pair (v, r) sets parent[v] <- r; the frontier expands with
    all recorded predecessors of v (nil seed markers excluded).  Returns the
    number of parent writes performed.
    """
    cur_v = roots.copy()
    cur_r = roots.copy()
    writes = 0
    while cur_v.shape[0] > 0:
        k = cur_v.shape[0]
        for i in prange(k):
            parent[cur_v[i]] = cur_r[i]
        writes += k
        counts = np.empty(k, np.int64)
        for i in prange(k):
            v = cur_v[i]
            h = hash_u64(v, ha, hb, rho)
            c = 0
            for j in range(offsets[h], offsets[h + 1]):
                if bfrom[j] == v and bto[j] != nil:
                    c += 1
            counts[i] = c
        starts, total = exclusive_scan(counts)
        nv = np.empty(total, np.int64)
        nr = np.empty(total, np.int64)
        for i in prange(k):
            v = cur_v[i]
            r = cur_r[i]
            h = hash_u64(v, ha, hb, rho)
            pos = starts[i]
            for j in range(offsets[h], offsets[h + 1]):
                if bfrom[j] == v and bto[j] != nil:
                    nv[pos] = bto[j]
                    nr[pos] = r
                    pos += 1
        cur_v = nv
        cur_r = nr
    return writes
