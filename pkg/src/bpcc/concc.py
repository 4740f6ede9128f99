"""Connected components straight off an edge sequence.

Endpoints are sparse ids (union-find roots in the intended use), so they
are densified first; all scratch state is proportional to the number of
edges, never to the full vertex universe.  The solver is round-based:
every edge whose endpoints carry different labels proposes hooking the
larger label under the smaller one, labels are pointer-jumped to a fixed
point, and resolved edges are filtered out.  The lowest-label winner rule
makes the outcome deterministic.
"""

from dataclasses import dataclass

import numpy as np

from . import _backend, _fallback, parprim
from . import _kernels as _kn


@dataclass
class ComponentPartition:
    """Vertex groups in CSR layout over the original (sparse) ids.

    ``members[offsets[i]:offsets[i+1]]`` lists component i.  Components are
    ordered by their minimum dense rank; the union of all components equals
    the distinct endpoints of the input edges.
    """

    members: np.ndarray
    offsets: np.ndarray
    vertex_universe: np.ndarray

    def __len__(self):
        return self.offsets.shape[0] - 1

    def __iter__(self):
        for i in range(len(self)):
            yield self.members[self.offsets[i]:self.offsets[i + 1]]

    def component_sets(self):
        return [frozenset(c.tolist()) for c in self]


def _densify(us, vs):
    if _backend.use_numba():
        uniq = _kn.dedup_hash(np.concatenate([us, vs]))
        tkey, trank, shift = _kn.build_rank_table(uniq)
        du = _kn.lookup_ranks(tkey, trank, shift, us)
        dv = _kn.lookup_ranks(tkey, trank, shift, vs)
        return du, dv, uniq
    uniq, inv = np.unique(np.concatenate([us, vs]), return_inverse=True)
    m = us.shape[0]
    return inv[:m].astype(np.int64), inv[m:].astype(np.int64), uniq


def _hook(labels, losers, winners):
    if _backend.use_numba():
        _kn.hook_minimum(labels, losers, winners)
    else:
        _fallback.hook_minimum(labels, losers, winners)


def connected_components(us, vs):
    """Exact components of the multigraph given by parallel edge arrays.

    Self-loops must have been removed by the caller; duplicate edges are
    fine.  Deterministic: no randomness survives into the output.
    """
    us = np.ascontiguousarray(us, dtype=np.int64)
    vs = np.ascontiguousarray(vs, dtype=np.int64)
    if us.shape[0] != vs.shape[0]:
        raise ValueError("edge endpoint arrays must have equal length")
    assert not np.any(us == vs), "self-loop passed to connected_components"
    if us.shape[0] == 0:
        empty = np.empty(0, np.int64)
        return ComponentPartition(empty, np.zeros(1, np.int64), empty)

    du, dv, uniq = _densify(us, vs)
    k = uniq.shape[0]
    labels = np.arange(k, dtype=np.int64)
    eu, ev = du, dv
    while eu.shape[0]:
        lu = labels[eu]
        lv = labels[ev]
        cross = lu != lv
        eu = eu[cross]
        ev = ev[cross]
        if eu.shape[0] == 0:
            break
        lu = lu[cross]
        lv = lv[cross]
        winners = np.minimum(lu, lv)
        losers = np.maximum(lu, lv)
        _hook(labels, losers, winners)
        while True:
            jumped = labels[labels]
            if np.array_equal(jumped, labels):
                break
            labels = jumped

    # group dense vertices by their final label, ordered by label rank
    present = np.zeros(k, dtype=bool)
    present[labels] = True
    rank_of_label = np.cumsum(present) - 1
    comp_rank = rank_of_label[labels]
    ncomp = int(present.sum())
    counts = np.bincount(comp_rank, minlength=ncomp)
    offsets = np.zeros(ncomp + 1, np.int64)
    np.cumsum(counts, out=offsets[1:])
    perm = parprim.int_sort_perm(comp_rank, ncomp)
    members = uniq[perm]
    return ComponentPartition(members, offsets, uniq)
