"""Bulk operations over the union-find forest.

A bulk update relabels the incoming edges by their endpoint roots, drops
self-loops, computes connected components of the surviving root pairs, and
links each component's roots with a balanced tournament of unions.  A bulk
query resolves both endpoints of every pair and compares roots.  At most
one bulk operation may run at a time; all parallelism lives inside.
"""

from dataclasses import dataclass

import numpy as np

from . import _backend, _fallback
from . import _kernels as _kn
from .concc import connected_components
from .ufcore import PRAGMATIC


@dataclass
class EdgeBatch:
    """A minibatch of edges; duplicates and self-loops are permitted."""

    us: np.ndarray
    vs: np.ndarray

    def __len__(self):
        return self.us.shape[0]


@dataclass
class QueryBatch:
    """A minibatch of connectivity queries (vertex pairs)."""

    us: np.ndarray
    vs: np.ndarray

    def __len__(self):
        return self.us.shape[0]


@dataclass
class UpdateStats:
    """Counters from one bulk update (or accumulated across several)."""

    edges: int = 0
    relabeled: int = 0          # root pairs surviving self-loop removal
    components_joined: int = 0
    unions: int = 0
    join_rounds: int = 0        # deepest union round among the joins
    trail_pairs: int = 0        # coordinated-find trail records, if routed

    def add(self, other):
        self.edges += other.edges
        self.relabeled += other.relabeled
        self.components_joined += other.components_joined
        self.unions += other.unions
        self.join_rounds = max(self.join_rounds, other.join_rounds)
        self.trail_pairs += other.trail_pairs


def _resolve_roots(forest, nodes):
    """Roots for ``nodes`` under the forest's configured find policy."""
    if forest.route_bulk_find:
        from .bulkfind import bulk_find

        res = bulk_find(forest, nodes)
        return res.roots, res.trail_from.shape[0]
    compress = forest.find_mode == PRAGMATIC
    fn = _kn.find_roots if _backend.use_numba() else _fallback.find_roots
    return fn(forest.parent, nodes, compress), 0


def bulk_query(forest, us, vs):
    """Boolean answer per pair: connected under everything inserted so far.

    Read-only with respect to the partition; compressing find modes may
    rewrite parent pointers without changing it.
    """
    us = forest._check_ids(us)
    vs = forest._check_ids(vs)
    m = us.shape[0]
    if m == 0:
        return np.zeros(0, dtype=bool)
    roots, _ = _resolve_roots(forest, np.concatenate([us, vs]))
    return roots[:m] == roots[m:]


def bulk_update(forest, us, vs):
    """Insert a minibatch of edges; returns an :class:`UpdateStats`.

    Afterwards two vertices share a root exactly when the accumulated graph
    (previous edges plus this batch) connects them.
    """
    us = forest._check_ids(us)
    vs = forest._check_ids(vs)
    m = us.shape[0]
    stats = UpdateStats(edges=m)
    if m == 0:
        return stats
    roots, trail = _resolve_roots(forest, np.concatenate([us, vs]))
    stats.trail_pairs = trail
    ru = roots[:m]
    rv = roots[m:]
    keep = ru != rv
    ru = ru[keep]
    rv = rv[keep]
    stats.relabeled = int(ru.shape[0])
    if stats.relabeled == 0:
        return stats
    part = connected_components(ru, rv)
    if __debug__:
        # components must not share roots or the joins below would conflict
        assert np.unique(part.members).shape[0] == part.members.shape[0]
    fn = _kn.join_tournament if _backend.use_numba() else _fallback.join_tournament
    unions, rounds = fn(forest.parent, forest.size, part.members,
                        part.offsets, len(part) == 1)
    forest.n_components -= int(unions)
    stats.components_joined = len(part)
    stats.unions = int(unions)
    stats.join_rounds = int(rounds)
    return stats


def parallel_join(forest, roots, stats=None):
    """Link the given distinct roots into a single tree; returns its root.

    Performs exactly ``len(roots) - 1`` unions in ``ceil(log2 len(roots))``
    rounds of disjoint pairs (the halving schedule).
    """
    roots = forest._check_ids(roots)
    k = roots.shape[0]
    if k == 0:
        raise ValueError("parallel_join needs at least one root")
    if __debug__:
        assert np.unique(roots).shape[0] == k, "duplicate roots"
        assert np.array_equal(forest.parent[roots], roots), "non-root argument"
    if k == 1:
        return int(roots[0])
    members = roots.copy()
    offsets = np.array([0, k], dtype=np.int64)
    fn = _kn.join_tournament if _backend.use_numba() else _fallback.join_tournament
    unions, rounds = fn(forest.parent, forest.size, members, offsets, True)
    forest.n_components -= int(unions)
    if stats is not None:
        stats.unions += int(unions)
        stats.join_rounds = max(stats.join_rounds, int(rounds))
        stats.components_joined += 1
    return int(members[0])
