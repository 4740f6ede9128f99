"""Seeded synthetic graph-stream generators.

Four families:

* ``grid3d``: the edges of a side^3 mesh, each exactly once.
* ``random``: round-robin first endpoints, uniform second endpoints; with
  m = n*k every vertex emits exactly k edges.
* ``local``: like ``random`` but the second endpoint sits at a small id
  offset drawn from a truncated geometric distribution (wrap-around), an
  approximation of low-expansion neighborhood graphs.
* ``rmat``: recursive quadrant descent with probabilities (a, b, c, d),
  the usual skewed power-law generator; n is rounded up to a power of two.

Edge content is a pure function of (family, n, m, params, seed): edges are
produced in fixed-size internal chunks with per-chunk child seeds, so the
stream does not depend on the requested batch size.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .bulk import EdgeBatch

FAMILIES = ("grid3d", "random", "local", "rmat")

_CHUNK = 1 << 20

RMAT_DEFAULT_PROBS = (0.57, 0.19, 0.19, 0.05)


@dataclass
class StreamSpec:
    """Description of one synthetic edge stream."""

    family: str
    n: int
    m: int = 0
    seed: int = 0
    batch_size: int = 100_000
    k: int = 5                      # edges per vertex (random / local)
    window: int = 64                # id-offset cap for the local family
    probs: tuple = RMAT_DEFAULT_PROBS
    shuffle: bool = False           # shuffle edges within each batch
    side: int = field(default=0)    # derived for grid3d

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}, expected {FAMILIES}")
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.family == "grid3d":
            side = round(self.n ** (1 / 3))
            if side**3 != self.n:
                raise ValueError("grid3d needs n to be a perfect cube")
            self.side = side
            mesh_edges = 3 * side * side * (side - 1)
            if self.m == 0:
                self.m = mesh_edges
            elif self.m != mesh_edges:
                raise ValueError(
                    f"grid3d with n={self.n} has exactly {mesh_edges} edges")
        elif self.family == "rmat":
            if abs(sum(self.probs) - 1.0) > 1e-9:
                raise ValueError("rmat probabilities must sum to 1")
            if min(self.probs) < 0:
                raise ValueError("rmat probabilities must be non-negative")
            if self.n > 0:
                self.n = 1 << max(0, math.ceil(math.log2(self.n)))
            if self.m == 0:
                raise ValueError("rmat needs an explicit edge count m")
        else:
            if self.k < 1:
                raise ValueError("k must be >= 1")
            if self.family == "local" and self.window < 1:
                raise ValueError("window must be >= 1")
            if self.m == 0:
                self.m = self.n * self.k
        if self.m > 0 and self.n < 2:
            raise ValueError("need at least 2 vertices to emit edges")

    @property
    def batch_count(self):
        return (self.m + self.batch_size - 1) // self.batch_size

    @classmethod
    def parse(cls, text, batch_size=None):
        """Parse ``family:key=value,key=value`` (e.g. ``rmat:n=65536,m=1e6``)."""
        family, _, rest = text.partition(":")
        family = family.strip()
        kwargs = {}
        if rest.strip():
            for item in rest.split(","):
                key, sep, value = item.partition("=")
                if not sep:
                    raise ValueError(f"bad generator parameter {item!r}")
                key = key.strip()
                value = value.strip()
                if key in ("n", "m", "seed", "k", "window", "batch_size"):
                    kwargs[key] = int(float(value))
                elif key in ("a", "b", "c", "d"):
                    kwargs.setdefault("_probs", dict())[key] = float(value)
                elif key == "shuffle":
                    kwargs[key] = value.lower() in ("1", "true", "yes")
                else:
                    raise ValueError(f"unknown generator parameter {key!r}")
        probs = kwargs.pop("_probs", None)
        if probs is not None:
            base = dict(zip("abcd", RMAT_DEFAULT_PROBS))
            base.update(probs)
            kwargs["probs"] = (base["a"], base["b"], base["c"], base["d"])
        if "n" not in kwargs:
            raise ValueError("generator spec needs n=...")
        if batch_size is not None:
            kwargs["batch_size"] = batch_size
        return cls(family=family, **kwargs)


def _chunk_rng(spec, chunk_idx):
    ss = np.random.SeedSequence(entropy=spec.seed & (2**63 - 1),
                                spawn_key=(chunk_idx,))
    return np.random.default_rng(ss)


def _grid3d_range(spec, lo, hi):
    s = spec.side
    per_axis = s * s * (s - 1)
    eids = np.arange(lo, hi, dtype=np.int64)
    axis = eids // per_axis
    r = eids % per_axis
    # x edges: (x, y, z) with x < s-1; y and z edges likewise on their axis
    short = r // (s - 1)
    along = r % (s - 1)
    b = short % s
    c = short // s
    x = np.where(axis == 0, along, b)
    y = np.where(axis == 0, b, np.where(axis == 1, along, c))
    z = np.where(axis == 2, along, c)
    us = x + s * (y + s * z)
    step = np.where(axis == 0, 1, np.where(axis == 1, s, s * s))
    return us, us + step


def _random_range(spec, lo, hi, rng):
    us = np.arange(lo, hi, dtype=np.int64) % spec.n
    vs = rng.integers(0, spec.n, size=hi - lo, dtype=np.int64)
    return us, vs


def _local_range(spec, lo, hi, rng):
    us = np.arange(lo, hi, dtype=np.int64) % spec.n
    count = hi - lo
    p = min(1.0, 4.0 / spec.window)
    dist = (rng.geometric(p, size=count).astype(np.int64) - 1) % spec.window + 1
    sign = rng.integers(0, 2, size=count, dtype=np.int64) * 2 - 1
    vs = (us + sign * dist) % spec.n
    return us, vs


def _rmat_range(spec, lo, hi, rng):
    count = hi - lo
    scale = int(math.log2(spec.n)) if spec.n > 1 else 0
    a, b, c, _ = spec.probs
    us = np.zeros(count, dtype=np.int64)
    vs = np.zeros(count, dtype=np.int64)
    for _level in range(scale):
        r = rng.random(count)
        ubit = (r >= a + b).astype(np.int64)
        vbit = ((r >= a) & (r < a + b) | (r >= a + b + c)).astype(np.int64)
        us = (us << 1) | ubit
        vs = (vs << 1) | vbit
    return us, vs


def _edges_for_chunk(spec, chunk_idx):
    lo = chunk_idx * _CHUNK
    hi = min(spec.m, lo + _CHUNK)
    if spec.family == "grid3d":
        return _grid3d_range(spec, lo, hi)
    rng = _chunk_rng(spec, chunk_idx)
    if spec.family == "random":
        return _random_range(spec, lo, hi, rng)
    if spec.family == "local":
        return _local_range(spec, lo, hi, rng)
    return _rmat_range(spec, lo, hi, rng)


def generate(spec):
    """Yield :class:`EdgeBatch` objects for the stream described by ``spec``.

    Emits ceil(m / batch_size) batches totaling exactly m edges, lazily,
    deterministic for a fixed spec.
    """
    if spec.m == 0:
        return
    batch_us = []
    batch_vs = []
    filled = 0
    emitted = 0
    for chunk_idx in range((spec.m + _CHUNK - 1) // _CHUNK):
        us, vs = _edges_for_chunk(spec, chunk_idx)
        pos = 0
        while pos < us.shape[0]:
            take = min(spec.batch_size - filled, us.shape[0] - pos)
            batch_us.append(us[pos:pos + take])
            batch_vs.append(vs[pos:pos + take])
            filled += take
            pos += take
            if filled == spec.batch_size:
                yield _emit(spec, batch_us, batch_vs, emitted)
                emitted += 1
                batch_us, batch_vs, filled = [], [], 0
    if filled:
        yield _emit(spec, batch_us, batch_vs, emitted)


def _emit(spec, parts_u, parts_v, batch_idx):
    us = np.concatenate(parts_u)
    vs = np.concatenate(parts_v)
    if spec.shuffle:
        rng = np.random.default_rng(np.random.SeedSequence(
            entropy=spec.seed & (2**63 - 1), spawn_key=(batch_idx, 1)))
        perm = rng.permutation(us.shape[0])
        us = us[perm]
        vs = vs[perm]
    return EdgeBatch(us, vs)
