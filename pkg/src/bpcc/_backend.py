"""Backend selection: numba-jitted kernels vs pure-numpy fallbacks.

The active backend is chosen once at import from the ``BPCC_BACKEND``
environment variable (``auto``, ``numba`` or ``numpy``) and can be switched
at runtime with :func:`set_backend`.  Kernel call sites dispatch per call,
so flipping the backend affects everything that runs afterwards.
"""

import os
import warnings

try:
    import numba
    from numba import njit, prange

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False
    numba = None

    def njit(*args, **kwargs):
        # no-op decorator so kernel modules stay importable
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def deco(fn):
            return fn

        return deco

    prange = range


_VALID = ("auto", "numba", "numpy")


def _resolve(name):
    if name not in _VALID:
        raise ValueError(f"unknown backend {name!r}, expected one of {_VALID}")
    if name == "auto":
        return "numba" if HAS_NUMBA else "numpy"
    if name == "numba" and not HAS_NUMBA:
        warnings.warn("numba is not importable, falling back to the numpy backend")
        return "numpy"
    return name


_active = _resolve(os.environ.get("BPCC_BACKEND", "auto").lower())


def active_backend():
    """Name of the backend used for subsequent kernel calls."""
    return _active


def use_numba():
    return _active == "numba"


def set_backend(name):
    """Switch kernel dispatch to ``numba`` or ``numpy`` (or ``auto``)."""
    global _active
    _active = _resolve(name)
    return _active


def max_threads():
    if not HAS_NUMBA:
        return 1
    return numba.config.NUMBA_NUM_THREADS


def set_num_threads(n):
    """Configure the parallel runtime; returns the thread count in effect.

    Clamped to the number of threads the runtime was started with.  The
    numpy backend is single-threaded, so the request is ignored there.
    """
    if n < 1:
        raise ValueError("thread count must be >= 1")
    if not use_numba():
        return 1
    actual = min(n, max_threads())
    numba.set_num_threads(actual)
    return actual


def get_num_threads():
    if not use_numba():
        return 1
    return numba.get_num_threads()


def warmup():
    """Compile the hot kernels on tiny inputs so timed runs start warm."""
    if not use_numba():
        return
    import numpy as np

    from . import _kernels as k

    parent = np.arange(4, dtype=np.int64)
    size = np.ones(4, dtype=np.int64)
    nodes = np.array([0, 1], dtype=np.int64)
    k.find_roots(parent, nodes, True)
    k.seq_apply_edges(parent.copy(), size.copy(), nodes, nodes[::-1].copy(), True)
    k.seq_answer_queries(parent.copy(), nodes, nodes[::-1].copy(), True)
    k.count_roots(parent)
    k.max_root_distance(parent)
    k.counting_sort_perm(nodes, 2)
    k.counting_sort_perm_chunked(nodes, 2, 2)
    k.dedup_hash(nodes)
    k.build_rank_table(nodes)
    k.hook_minimum(parent.copy(), nodes, nodes)
    members = np.array([0, 1, 2], dtype=np.int64)
    k.join_tournament(parent.copy(), size.copy(), members.copy(),
                      np.array([0, 3], dtype=np.int64), True)
    visited = np.zeros(4, dtype=np.uint8)
    tf, tt, lev, roots, fr = k.bulk_find_phase1(parent.copy(), nodes, visited, 4)
    hashes = k.hash_ids(tf, np.uint64(0x9E3779B97F4A7C15), np.uint64(11), np.uint64(12))
    perm, offs = k.bucket_index(hashes, 12)
    k.bulk_find_phase2(parent.copy(), tf[perm], tt[perm], offs,
                       np.uint64(0x9E3779B97F4A7C15), np.uint64(11), np.uint64(12),
                       roots, 4)
