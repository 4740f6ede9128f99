"""Sequence primitives: filter, exclusive prefix sum, pack, duplicate
removal, and stable small-range integer sorting.

All functions are pure with respect to their inputs and safe to call from
multiple threads on distinct data.  Inputs shorter than the library-wide
grain size run on the sequential code path regardless of backend, since
parallel scheduling overhead dominates tiny arrays.
"""

import numpy as np

from . import _backend, _fallback
from . import _kernels as _kn

_GRAIN = 2048

# keyBound may exceed the input length by at most this factor (the counting
# passes stay linear only while the key range is O(n))
INT_SORT_KEY_FACTOR = 8


def get_grain_size():
    return _GRAIN


def set_grain_size(n):
    """Set the length below which primitives run sequentially (default 2048)."""
    global _GRAIN
    if n < 1:
        raise ValueError("grain size must be >= 1")
    _GRAIN = int(n)


def _as_ids(xs):
    return np.ascontiguousarray(xs, dtype=np.int64)


def filter(xs, keep):
    """Elements of ``xs`` satisfying ``keep``, original order preserved.

    ``keep`` receives the whole array and must return a boolean mask
    (vectorized predicate).
    """
    xs = np.asarray(xs)
    if xs.shape[0] == 0:
        return xs.copy()
    mask = np.asarray(keep(xs), dtype=bool)
    return xs[mask]


def pack(xs, flags):
    """Elements of ``xs`` whose flag is set, original order preserved."""
    xs = np.asarray(xs)
    return xs[np.asarray(flags, dtype=bool)]


def prefix_sum(xs):
    """Exclusive prefix sums: out[i] = sum(xs[:i]).  Returns (out, total).

    Raises OverflowError when the running sum could exceed the signed
    64-bit index width (conservative magnitude check).
    """
    xs = _as_ids(xs)
    n = xs.shape[0]
    if n == 0:
        return np.empty(0, np.int64), 0
    peak = int(np.abs(xs).max())
    if peak and peak > (2**63 - 1) // n:
        raise OverflowError("prefix sum may exceed the 64-bit index width")
    if _backend.use_numba() and n >= _GRAIN:
        out, total = _kn.exclusive_scan(xs)
    else:
        out, total = _fallback.exclusive_scan(xs)
    return out, int(total)


def remove_dup(xs):
    """Distinct values of ``xs``; output order is unspecified.

    Values must be non-negative integers.  Linear work: a hash-table claim
    pass followed by compaction (the numpy backend substitutes np.unique).
    """
    xs = _as_ids(xs)
    if xs.shape[0] and int(xs.min()) < 0:
        raise ValueError("remove_dup expects non-negative ids")
    if _backend.use_numba():
        return _kn.dedup_hash(xs)
    return _fallback.dedup_hash(xs)


def int_sort_perm(keys, key_bound):
    """Permutation that stably sorts integer ``keys`` ascending.

    Keys must lie in [0, key_bound) and key_bound must stay within
    INT_SORT_KEY_FACTOR times the input length, keeping the counting
    passes linear.
    """
    keys = _as_ids(keys)
    n = keys.shape[0]
    if n == 0:
        return np.empty(0, np.int64)
    if key_bound < 1:
        raise ValueError("key_bound must be >= 1")
    lo = int(keys.min())
    hi = int(keys.max())
    if lo < 0 or hi >= key_bound:
        raise ValueError(f"key {lo if lo < 0 else hi} outside [0, {key_bound})")
    if key_bound > INT_SORT_KEY_FACTOR * n:
        raise ValueError(
            f"key_bound {key_bound} exceeds {INT_SORT_KEY_FACTOR}x input length {n}")
    if not _backend.use_numba():
        return _fallback.counting_sort_perm(keys, key_bound)
    if n < _GRAIN:
        return _kn.counting_sort_perm(keys, key_bound)
    nchunks = min(_backend.get_num_threads() * 4, max(1, n // _GRAIN))
    if nchunks <= 1:
        return _kn.counting_sort_perm(keys, key_bound)
    return _kn.counting_sort_perm_chunked(keys, key_bound, nchunks)


def int_sort(keys, values=None, key_bound=None):
    """Stable sort of (key, value) pairs by key ascending.

    Returns (sorted_keys, sorted_values), or just sorted_keys when no
    values are given.
    """
    keys = _as_ids(keys)
    if key_bound is None:
        key_bound = int(keys.max()) + 1 if keys.shape[0] else 1
    perm = int_sort_perm(keys, key_bound)
    if values is None:
        return keys[perm]
    values = np.asarray(values)
    if values.shape[0] != keys.shape[0]:
        raise ValueError("keys and values must have equal length")
    return keys[perm], values[perm]
