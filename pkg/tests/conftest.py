import collections

import numpy as np
import pytest

import bpcc
from bpcc import _backend


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    bpcc.warmup()


@pytest.fixture(params=["numba", "numpy"])
def backend(request):
    name = request.param
    if name == "numba" and not _backend.HAS_NUMBA:
        pytest.skip("numba unavailable")
    previous = bpcc.active_backend()
    bpcc.set_backend(name)
    yield name
    bpcc.set_backend(previous)


class TextbookUnionFind:
    """Independent reference: plain python union-find, full path compression."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, u):
        root = u
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[u] != root:
            self.parent[u], u = root, self.parent[u]
        return root

    def union(self, u, v):
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return ru
        if self.size[rv] > self.size[ru]:
            ru, rv = rv, ru
        self.parent[rv] = ru
        self.size[ru] += self.size[rv]
        return ru

    def connected(self, u, v):
        return self.find(u) == self.find(v)

    def components(self):
        return len({self.find(v) for v in range(len(self.parent))})


def bfs_components(n, edges):
    """Component label per vertex by breadth-first search over an adjacency map."""
    adj = collections.defaultdict(list)
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    label = [-1] * n
    current = 0
    for start in range(n):
        if label[start] != -1:
            continue
        label[start] = current
        queue = collections.deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if label[y] == -1:
                    label[y] = current
                    queue.append(y)
        current += 1
    return label


def partition_sets(labels):
    groups = collections.defaultdict(set)
    for v, lab in enumerate(labels):
        groups[lab].add(v)
    return {frozenset(g) for g in groups.values()}


def forest_partition_sets(forest):
    roots = bpcc.ufcore.find_roots_oracle(forest.parent) \
        if hasattr(bpcc, "ufcore") else None
    from bpcc.ufcore import find_roots_oracle

    roots = find_roots_oracle(forest.parent)
    groups = collections.defaultdict(set)
    for v, r in enumerate(roots.tolist()):
        groups[r].add(v)
    return {frozenset(g) for g in groups.values()}


def make_forest_from_parent(parent, find_mode=bpcc.PRAGMATIC):
    """Forest with an explicit parent array; sizes recomputed to match."""
    from bpcc.ufcore import find_roots_oracle

    parent = np.asarray(parent, dtype=np.int64)
    n = parent.shape[0]
    forest = bpcc.UnionFindForest(n, find_mode=find_mode)
    forest.parent = parent.copy()
    roots = find_roots_oracle(forest.parent)
    counts = np.bincount(roots, minlength=n)
    forest.size = np.where(parent == np.arange(n), counts, 1).astype(np.int64)
    forest.n_components = int((parent == np.arange(n)).sum())
    return forest


def figure_tree_parent():
    """A 20-vertex forest with two long paths meeting partway up one tree.

    parent: 1 -> 2 -> 4 -> 15 -> 19 (root), 3 -> 2, 7 -> 8 -> 9 -> 4.
    Every other vertex is a singleton root.
    """
    parent = np.arange(20, dtype=np.int64)
    parent[1] = 2
    parent[2] = 4
    parent[3] = 2
    parent[4] = 15
    parent[15] = 19
    parent[7] = 8
    parent[8] = 9
    parent[9] = 4
    return parent


def random_forest(rng, n, n_unions):
    """Forest built by random unions; returns it in plain mode."""
    forest = bpcc.UnionFindForest(n, find_mode=bpcc.PLAIN)
    for _ in range(n_unions):
        u = int(rng.integers(0, n))
        v = int(rng.integers(0, n))
        forest.union(u, v)
    return forest
