"""Union-find forest over dense vertex ids with union by size.

Two find modes:

* ``plain``: read-only finds.
* ``pragmatic``: after reaching the root, each find re-walks its path and
  points every traversed node directly at the root.  Concurrent compressing
  finds may race on the writes, but every writer stores the current root of
  the written node's tree, so the races are benign by value.  Compressing
  finds must not run concurrently with unions.

The same structure doubles as the sequential baseline: driving
:meth:`UnionFindForest.union` edge by edge with pragmatic finds is exactly
the textbook union-find with full path compression, which the bulk
structures are validated against.
"""

import numpy as np

from . import _backend, _fallback
from . import _kernels as _kn

PLAIN = "plain"
PRAGMATIC = "pragmatic"

_FIND_MODES = (PLAIN, PRAGMATIC)


def _dispatch(name):
    mod = _kn if _backend.use_numba() else _fallback
    return getattr(mod, name)


class UnionFindForest:
    """Forest of parent pointers plus per-root tree sizes.

    Vertex ids are the dense range [0, n); they are fixed at construction.
    Union by size keeps every tree's height at most floor(log2 n); the
    compressing find mode only ever shortens paths, so the bound holds in
    both modes.
    """

    def __init__(self, n, find_mode=PRAGMATIC, route_bulk_find=False):
        if n < 0:
            raise ValueError("vertex count must be >= 0")
        if find_mode not in _FIND_MODES:
            raise ValueError(f"find_mode must be one of {_FIND_MODES}")
        self.n = int(n)
        self.find_mode = find_mode
        # when set, the bulk operations resolve all finds through the
        # coordinated multi-source finder instead of independent walks
        self.route_bulk_find = bool(route_bulk_find)
        self.parent = np.arange(self.n, dtype=np.int64)
        self.size = np.ones(self.n, dtype=np.int64)
        self.n_components = self.n
        self._visited = None
        self._find_seed_counter = 0

    # -- basic operations ---------------------------------------------------

    def _check_ids(self, ids):
        ids = np.ascontiguousarray(ids, dtype=np.int64)
        if ids.shape[0]:
            lo = int(ids.min())
            hi = int(ids.max())
            if lo < 0 or hi >= self.n:
                raise ValueError(
                    f"vertex id {lo if lo < 0 else hi} outside [0, {self.n})")
        return ids

    def find(self, u):
        """Root of the tree containing ``u``; compresses in pragmatic mode."""
        if not 0 <= u < self.n:
            raise ValueError(f"vertex id {u} outside [0, {self.n})")
        parent = self.parent
        r = u
        while parent[r] != r:
            r = parent[r]
        r = int(r)
        if self.find_mode == PRAGMATIC:
            w = u
            while w != r:
                parent[w], w = r, int(parent[w])
        return r

    def find_many(self, nodes, compress=None):
        """Vector of roots for ``nodes`` (one kernel call)."""
        nodes = self._check_ids(nodes)
        if compress is None:
            compress = self.find_mode == PRAGMATIC
        return _dispatch("find_roots")(self.parent, nodes, bool(compress))

    def union_roots(self, u, v):
        """Link two distinct roots; the smaller tree goes under the larger.

        Constant time.  On equal sizes the first argument wins.  Returns the
        winning root.
        """
        assert u != v, "union_roots requires distinct roots"
        assert self.parent[u] == u and self.parent[v] == v, \
            "union_roots arguments must be roots"
        if self.size[v] > self.size[u]:
            u, v = v, u
        self.parent[v] = u
        self.size[u] += self.size[v]
        self.n_components -= 1
        return int(u)

    def union(self, u, v):
        """Connect ``u`` and ``v`` (find both roots, then link if distinct).

        The one-edge-at-a-time operation used by the sequential baselines.
        Returns the root of the combined tree.
        """
        ru = self.find(u)
        rv = self.find(v)
        if ru == rv:
            return ru
        return self.union_roots(ru, rv)

    def apply_edges(self, us, vs):
        """Sequential union over a whole edge batch (baseline driver)."""
        us = self._check_ids(us)
        vs = self._check_ids(vs)
        compress = self.find_mode == PRAGMATIC
        unions = int(_dispatch("seq_apply_edges")(
            self.parent, self.size, us, vs, compress))
        self.n_components -= unions
        return unions

    def answer_queries(self, us, vs):
        """Sequential connectivity answers for query pairs (baseline driver)."""
        us = self._check_ids(us)
        vs = self._check_ids(vs)
        compress = self.find_mode == PRAGMATIC
        ans = _dispatch("seq_answer_queries")(self.parent, us, vs, compress)
        return ans.astype(bool)

    def count_components(self):
        """Number of roots (maintained incrementally by the unions)."""
        return self.n_components

    # -- auditing helpers ----------------------------------------------------

    def audit_components(self):
        """Recount roots by scanning the parent array."""
        return int(_dispatch("count_roots")(self.parent))

    def max_height(self):
        """Longest path from any vertex to its root."""
        return int(_dispatch("max_root_distance")(self.parent))

    def check_invariants(self):
        """Full structural audit: acyclic paths, size bookkeeping, counters."""
        n = self.n
        parent = self.parent
        roots = find_roots_oracle(parent)
        counts = np.bincount(roots, minlength=n)
        root_mask = parent == np.arange(n, dtype=np.int64)
        if not np.array_equal(np.flatnonzero(root_mask), np.flatnonzero(counts)):
            raise AssertionError("roots disagree with reachability")
        if not np.array_equal(self.size[root_mask], counts[root_mask]):
            raise AssertionError("size array wrong at some root")
        if self.n_components != int(root_mask.sum()):
            raise AssertionError("component counter out of sync")
        if n and self.max_height() > int(np.log2(max(n, 1))):
            raise AssertionError("height bound exceeded")

    def visited_scratch(self):
        """Shared per-forest flag array for the coordinated finder."""
        if self._visited is None:
            self._visited = np.zeros(self.n, dtype=np.uint8)
        return self._visited

    def next_find_seed(self):
        self._find_seed_counter += 1
        return self._find_seed_counter


def find_roots_oracle(parent):
    """Roots for every vertex by repeated pointer jumping (no mutation)."""
    n = parent.shape[0]
    roots = parent.copy()
    while True:
        nxt = parent[roots]
        if np.array_equal(nxt, roots):
            return roots
        roots = nxt


def partitions_equal(parent_a, parent_b):
    """Whether two forests induce the same connectivity partition."""
    ra = find_roots_oracle(np.asarray(parent_a, dtype=np.int64))
    rb = find_roots_oracle(np.asarray(parent_b, dtype=np.int64))
    if ra.shape != rb.shape:
        return False
    # equal partitions iff root labels map one-to-one between the forests
    pairs = np.unique(np.stack([ra, rb]), axis=1).shape[1]
    return pairs == np.unique(ra).shape[0] == np.unique(rb).shape[0]
