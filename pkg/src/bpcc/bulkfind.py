"""Coordinated multi-source find with full cross-query path compression.

Resolving a batch of finds independently repeats work whenever their paths
share a suffix.  Here the batch runs as one merged upward walk: flows that
meet continue as one, every hop is recorded, and a reverse pass from the
discovered roots pushes each root back down the recorded trails, pointing
every traversed node directly at its root.

The recorded trail is a flat array of (node, predecessor) pairs.  The
reverse pass needs "all predecessors recorded at node f" lookups, served by
a response distributor: pairs bucketed by a seeded hash of the node,
grouped with a stable counting sort, plus a bucket offset index.  Expected
total scan work over all distinct nodes stays within twice the pair count
because the hash range is three times the pair count.
"""

from dataclasses import dataclass

import numpy as np

from . import _backend, _fallback
from . import _kernels as _kn

_SEED_MIX = np.uint64(0x9E3779B97F4A7C15)


def _mod():
    return _kn if _backend.use_numba() else _fallback


def _hash_params(seed, rho):
    rng = np.random.default_rng(np.random.SeedSequence(int(seed) & (2**63 - 1)))
    ha = np.uint64(rng.integers(0, 2**63, dtype=np.int64)) | np.uint64(1)
    hb = np.uint64(rng.integers(0, 2**63, dtype=np.int64))
    return ha, hb, np.uint64(rho)


@dataclass
class ResponseDistributor:
    """Hash-bucketed index over (from, to) pairs answering all_from(f)."""

    lam: int
    rho: int
    seed: int
    ha: np.uint64
    hb: np.uint64
    bfrom: np.ndarray
    bto: np.ndarray
    offsets: np.ndarray

    def all_from(self, f):
        """All ``to`` values recorded with ``from == f`` (a multiset).

        Scans a single hash bucket.
        """
        if self.lam == 0:
            return np.empty(0, np.int64)
        mod = _mod()
        h = int(mod.hash_ids(np.asarray([f], np.int64), self.ha, self.hb,
                             np.uint64(self.rho))[0])
        lo = self.offsets[h]
        hi = self.offsets[h + 1]
        sel = self.bfrom[lo:hi] == f
        return self.bto[lo:hi][sel]

    def bucket_scan_length(self, f):
        """Pairs inspected by an ``all_from(f)`` call (its bucket's size)."""
        if self.lam == 0:
            return 0
        mod = _mod()
        h = int(mod.hash_ids(np.asarray([f], np.int64), self.ha, self.hb,
                             np.uint64(self.rho))[0])
        return int(self.offsets[h + 1] - self.offsets[h])


def build_rd(pairs_from, pairs_to, seed=0):
    """Build a :class:`ResponseDistributor` over the given pairs.

    The hash range is three times the pair count, so the grouping sort is a
    small-range integer sort.  The seed is recorded for reproducibility.
    """
    pairs_from = np.ascontiguousarray(pairs_from, dtype=np.int64)
    pairs_to = np.ascontiguousarray(pairs_to, dtype=np.int64)
    if pairs_from.shape[0] != pairs_to.shape[0]:
        raise ValueError("pair arrays must have equal length")
    lam = pairs_from.shape[0]
    rho = 3 * lam
    if lam == 0:
        return ResponseDistributor(0, 0, int(seed), np.uint64(1), np.uint64(0),
                                   pairs_from, pairs_to, np.zeros(1, np.int64))
    ha, hb, rho_u = _hash_params(seed, rho)
    mod = _mod()
    hashes = mod.hash_ids(pairs_from, ha, hb, rho_u)
    perm, offsets = mod.bucket_index(hashes, rho)
    return ResponseDistributor(lam, rho, int(seed), ha, hb,
                               pairs_from[perm], pairs_to[perm], offsets)


@dataclass
class BulkFindResult:
    """Answers plus the traversal transcript of one coordinated find."""

    roots: np.ndarray           # answer per query position
    discovered: np.ndarray      # distinct roots reached
    trail_from: np.ndarray      # recorded pairs, level-concatenated
    trail_to: np.ndarray        # predecessor per pair (nil for the seeds)
    level_sizes: np.ndarray     # pairs recorded per level (level 0 = seeds)
    frontier_nodes: np.ndarray  # every node that entered a frontier
    nil: int
    rd_seed: int

    @property
    def trail_length(self):
        return int(self.trail_from.shape[0])


def mk_frontier(nodes, visited):
    """Distinct nodes among ``nodes`` whose visited flag is clear.

    Pure: neither argument is modified.  Output order is unspecified.
    """
    nodes = np.ascontiguousarray(nodes, dtype=np.int64)
    return np.unique(nodes[visited[nodes] == 0])


def distribute_responses(forest, rd, roots):
    """Reverse pass: push every discovered root down its recorded trails.

    Each reached pair (v, r) sets parent[v] to r; expansion follows
    ``rd.all_from(v)`` with nil markers dropped.  Every trail node is
    reached exactly once because each recorded hop has a single owner.
    Returns the number of parent writes.
    """
    roots = np.ascontiguousarray(roots, dtype=np.int64)
    if rd.lam == 0:
        forest.parent[roots] = roots
        return int(roots.shape[0])
    mod = _mod()
    return int(mod.bulk_find_phase2(
        forest.parent, rd.bfrom, rd.bto, rd.offsets,
        rd.ha, rd.hb, np.uint64(rd.rho), roots, forest.n))


def bulk_find(forest, nodes, rd_seed=None):
    """Resolve the root of every node in one coordinated traversal.

    Answers equal independent plain finds on the pre-call forest; as a side
    effect every traversed node afterwards points directly at its root (the
    partition is unchanged).  Duplicate queries are fine.  Must not overlap
    any other operation that touches the forest.
    """
    nodes = forest._check_ids(nodes)
    nil = forest.n
    if rd_seed is None:
        rd_seed = (forest.next_find_seed() * int(_SEED_MIX)) & (2**63 - 1)
    if nodes.shape[0] == 0:
        empty = np.empty(0, np.int64)
        return BulkFindResult(empty, empty, empty, empty,
                              np.zeros(1, np.int64), empty, nil, int(rd_seed))
    visited = forest.visited_scratch()
    mod = _mod()
    tfrom, tto, levels, roots, fnodes = mod.bulk_find_phase1(
        forest.parent, nodes, visited, nil)
    rd = build_rd(tfrom, tto, seed=rd_seed)
    distribute_responses(forest, rd, roots)
    answers = forest.parent[nodes].copy()
    return BulkFindResult(answers, roots, tfrom, tto, levels, fnodes,
                          nil, int(rd_seed))
