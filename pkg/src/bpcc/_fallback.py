"""Pure-numpy fallbacks for every kernel in ``_kernels``.

Vectorized where numpy allows it (pointer jumping in synchronized rounds
instead of per-element walks); the strictly sequential baselines degrade to
Python loops.  Results match the numba kernels except where an operation's
output order is documented as unspecified.
"""

import numpy as np


def find_roots(parent, nodes, compress):
    roots = nodes.copy()
    while True:
        nxt = parent[roots]
        if np.array_equal(nxt, roots):
            break
        roots = nxt
    if compress and len(nodes):
        cur = nodes.copy()
        active = cur != roots
        while active.any():
            c = cur[active]
            nxt = parent[c]
            parent[c] = roots[active]
            cur[active] = nxt
            active = cur != roots
    return roots


def _walk(parent, v, compress):
    r = v
    while parent[r] != r:
        r = parent[r]
    if compress:
        w = v
        while w != r:
            parent[w], w = r, parent[w]
    return r


def seq_apply_edges(parent, size, us, vs, compress):
    unions = 0
    for u, v in zip(us.tolist(), vs.tolist()):
        ru = _walk(parent, u, compress)
        rv = _walk(parent, v, compress)
        if ru != rv:
            if size[rv] > size[ru]:
                ru, rv = rv, ru
            parent[rv] = ru
            size[ru] += size[rv]
            unions += 1
    return unions


def seq_answer_queries(parent, us, vs, compress):
    out = np.empty(len(us), np.uint8)
    for i, (u, v) in enumerate(zip(us.tolist(), vs.tolist())):
        out[i] = 1 if _walk(parent, u, compress) == _walk(parent, v, compress) else 0
    return out


def count_roots(parent):
    return int((parent == np.arange(parent.shape[0], dtype=parent.dtype)).sum())


def max_root_distance(parent):
    n = parent.shape[0]
    if n == 0:
        return 0
    cur = parent.copy()
    depth = (cur != np.arange(n, dtype=parent.dtype)).astype(np.int64)
    while True:
        nxt = parent[cur]
        moving = nxt != cur
        if not moving.any():
            break
        depth[moving] += 1
        cur = nxt
    return int(depth.max())


def join_tournament(parent, size, members, offsets, parallel_pairs):
    lens = offsets[1:] - offsets[:-1]
    ncomp = lens.shape[0]
    if ncomp == 0:
        return 0, 0
    total = int((lens - 1).sum())
    maxlen = int(lens.max())
    positions = np.arange(offsets[-1])
    comp_of = np.repeat(np.arange(ncomp), lens)
    start_of = offsets[comp_of]
    end_of = offsets[comp_of + 1]
    rel = positions - start_of
    rounds = 0
    stride = 1
    while stride < maxlen:
        mask = (rel % (2 * stride) == 0) & (positions + stride < end_of)
        ia = positions[mask]
        ib = ia + stride
        a = members[ia]
        b = members[ib]
        bwins = size[b] > size[a]
        win = np.where(bwins, b, a)
        lose = np.where(bwins, a, b)
        parent[lose] = win
        size[win] += size[lose]
        members[ia] = win
        stride *= 2
        rounds += 1
    return total, rounds


def counting_sort_perm(keys, key_bound):
    return np.argsort(keys, kind="stable")


def counting_sort_perm_chunked(keys, key_bound, nchunks):
    return np.argsort(keys, kind="stable")


def exclusive_scan(xs):
    total = int(xs.sum()) if xs.shape[0] else 0
    out = np.zeros(xs.shape[0], np.int64)
    if xs.shape[0] > 1:
        np.cumsum(xs[:-1], out=out[1:])
    return out, total


def dedup_hash(xs):
    # sorted rather than first-appearance order; callers treat it as a set
    return np.unique(xs)


def hook_minimum(labels, losers, winners):
    np.minimum.at(labels, losers, winners)


def bulk_find_phase1(parent, nodes, visited, nil):
    m = nodes.shape[0]
    tfrom = [nodes.copy()]
    tto = [np.full(m, nil, np.int64)]
    levels = [m]
    frontier = np.unique(nodes[visited[nodes] == 0])
    visited[frontier] = 1
    fparts = [frontier]
    rparts = []
    while frontier.shape[0]:
        p = parent[frontier]
        isroot = p == frontier
        rparts.append(frontier[isroot])
        hf = p[~isroot]
        tfrom.append(hf)
        tto.append(frontier[~isroot])
        levels.append(hf.shape[0])
        frontier = np.unique(hf[visited[hf] == 0])
        visited[frontier] = 1
        fparts.append(frontier)
    fnodes = np.concatenate(fparts) if fparts else np.empty(0, np.int64)
    visited[fnodes] = 0
    return (np.concatenate(tfrom).astype(np.int64),
            np.concatenate(tto).astype(np.int64),
            np.asarray(levels, np.int64),
            np.concatenate(rparts).astype(np.int64) if rparts else np.empty(0, np.int64),
            fnodes.astype(np.int64))


def hash_ids(xs, ha, hb, rho):
    z = (ha * xs.astype(np.uint64) + hb) >> np.uint64(32)
    return (z % rho).astype(np.int64)


def bucket_index(hashes, rho):
    counts = np.bincount(hashes, minlength=rho)
    offsets = np.zeros(rho + 1, np.int64)
    np.cumsum(counts, out=offsets[1:])
    perm = np.argsort(hashes, kind="stable")
    return perm, offsets


def bulk_find_phase2(parent, bfrom, bto, offsets, ha, hb, rho, roots, nil):
    cur_v = roots.copy()
    cur_r = roots.copy()
    writes = 0
    while cur_v.shape[0]:
        parent[cur_v] = cur_r
        writes += cur_v.shape[0]
        h = hash_ids(cur_v, ha, hb, rho)
        starts = offsets[h]
        lens = offsets[h + 1] - starts
        total = int(lens.sum())
        if total == 0:
            break
        seg = np.repeat(np.arange(cur_v.shape[0]), lens)
        prefix = np.zeros(lens.shape[0], np.int64)
        np.cumsum(lens[:-1], out=prefix[1:])
        pos = np.repeat(starts, lens) + (np.arange(total) - np.repeat(prefix, lens))
        cf = bfrom[pos]
        ct = bto[pos]
        keep = (cf == cur_v[seg]) & (ct != nil)
        cur_r = cur_r[seg][keep]
        cur_v = ct[keep]
    return writes
