"""Replay harness: stream files, minibatch replay, reports, CSV output.

Stream file formats
-------------------

Binary (little-endian throughout)::

    magic   4 bytes  b"BPCC"
    version u32      1
    n       u64      vertex count
    batches u64      batch count
    then per batch:
      kind  u32      0 = UPDATE, 1 = QUERY
      count u64      pair count
      pairs count * (u64 u, u64 v)

Text: a header line ``#bpcc version=1 n=<n>``, then ``#batch update`` or
``#batch query`` separators, each followed by one ``u v`` pair per line.
Blank lines are ignored.  Files are sniffed by the 4-byte magic.

Replay drives exactly one bulk operation at a time and times only the bulk
call itself (no I/O, no oracle work).  Update and query batches are timed
and reported separately.
"""

import csv
import io
import struct
import time
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .bulk import EdgeBatch, QueryBatch, bulk_query, bulk_update
from .ufcore import PLAIN, PRAGMATIC, UnionFindForest

MAGIC = b"BPCC"
VERSION = 1
UPDATE = 0
QUERY = 1

MODES = ("simple", "workEfficient", "seqUF", "seqUFPC")


class StreamParseError(Exception):
    """Malformed stream file; ``offset`` is the failing byte position."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class OracleMismatchError(Exception):
    """Replay diverged from the sequential oracle at ``batch_index``."""

    def __init__(self, batch_index, what):
        super().__init__(f"oracle mismatch at batch {batch_index}: {what}")
        self.batch_index = batch_index


@dataclass
class Stream:
    """An in-memory stream: vertex count plus (kind, batch) records."""

    n: int
    batches: list  # of (kind, EdgeBatch | QueryBatch)


def _check_ids_in_range(us, vs, n, offset):
    if us.shape[0]:
        hi = max(int(us.max()), int(vs.max()))
        lo = min(int(us.min()), int(vs.min()))
        if lo < 0 or hi >= n:
            raise StreamParseError(f"vertex id {hi if hi >= n else lo} out of range", offset)


def write_stream(path, stream, text=False):
    if text:
        with open(path, "w") as fh:
            fh.write(f"#bpcc version={VERSION} n={stream.n}\n")
            for kind, batch in stream.batches:
                fh.write("#batch update\n" if kind == UPDATE else "#batch query\n")
                for u, v in zip(batch.us.tolist(), batch.vs.tolist()):
                    fh.write(f"{u} {v}\n")
        return
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<IQQ", VERSION, stream.n, len(stream.batches)))
        for kind, batch in stream.batches:
            fh.write(struct.pack("<IQ", kind, len(batch)))
            pairs = np.empty((len(batch), 2), dtype="<u8")
            pairs[:, 0] = batch.us
            pairs[:, 1] = batch.vs
            fh.write(pairs.tobytes())


def read_stream(path):
    with open(path, "rb") as fh:
        head = fh.read(4)
        if head == MAGIC:
            return _read_binary(fh)
    return _read_text(path)


def _read_binary(fh):
    offset = 4
    fixed = fh.read(20)
    if len(fixed) != 20:
        raise StreamParseError("truncated header", offset)
    version, n, nbatches = struct.unpack("<IQQ", fixed)
    if version != VERSION:
        raise StreamParseError(f"unsupported version {version}", offset)
    offset += 20
    batches = []
    for _ in range(nbatches):
        rec = fh.read(12)
        if len(rec) != 12:
            raise StreamParseError("truncated batch header", offset)
        kind, count = struct.unpack("<IQ", rec)
        if kind not in (UPDATE, QUERY):
            raise StreamParseError(f"bad batch kind {kind}", offset)
        offset += 12
        payload = fh.read(16 * count)
        if len(payload) != 16 * count:
            raise StreamParseError("truncated batch payload", offset)
        pairs = np.frombuffer(payload, dtype="<u8").reshape(count, 2)
        us = pairs[:, 0].astype(np.int64)
        vs = pairs[:, 1].astype(np.int64)
        _check_ids_in_range(us, vs, n, offset)
        cls = EdgeBatch if kind == UPDATE else QueryBatch
        batches.append((kind, cls(us, vs)))
        offset += 16 * count
    if fh.read(1):
        raise StreamParseError("trailing bytes after final batch", offset)
    return Stream(n, batches)


def _read_text(path):
    with open(path, "rb") as fh:
        data = fh.read()
    lines = data.split(b"\n")
    offset = 0
    n = None
    batches = []
    cur_kind = None
    cur_u, cur_v = [], []

    def flush():
        if cur_kind is None:
            return
        us = np.asarray(cur_u, dtype=np.int64)
        vs = np.asarray(cur_v, dtype=np.int64)
        cls = EdgeBatch if cur_kind == UPDATE else QueryBatch
        batches.append((cur_kind, cls(us, vs)))

    for raw in lines:
        line = raw.strip()
        if line.startswith(b"#bpcc"):
            try:
                fields = dict(tok.split(b"=") for tok in line.split()[1:])
                n = int(fields[b"n"])
            except (ValueError, KeyError):
                raise StreamParseError("bad text header", offset)
        elif line.startswith(b"#batch"):
            flush()
            kind_name = line.split()[1:]
            if kind_name == [b"update"]:
                cur_kind = UPDATE
            elif kind_name == [b"query"]:
                cur_kind = QUERY
            else:
                raise StreamParseError("bad batch separator", offset)
            cur_u, cur_v = [], []
        elif line:
            if n is None:
                raise StreamParseError("pairs before header", offset)
            if cur_kind is None:
                raise StreamParseError("pairs before any #batch separator", offset)
            parts = line.split()
            if len(parts) != 2:
                raise StreamParseError("expected 'u v' pair", offset)
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise StreamParseError("non-integer pair", offset)
            if not (0 <= u < n and 0 <= v < n):
                raise StreamParseError("vertex id out of range", offset)
            cur_u.append(u)
            cur_v.append(v)
        offset += len(raw) + 1
    if n is None:
        raise StreamParseError("missing #bpcc header", 0)
    flush()
    return Stream(n, batches)


def stream_from_generator(spec):
    """Materialize a generated stream of update batches (small streams)."""
    from .gen import generate

    return Stream(spec.n, [(UPDATE, b) for b in generate(spec)])


# ---------------------------------------------------------------------------
# replay


@dataclass
class BatchRow:
    index: int
    kind: int
    size: int
    seconds: float
    components_after: int

    @property
    def per_second(self):
        return self.size / self.seconds if self.seconds > 0 else 0.0


@dataclass
class RunReport:
    """Per-batch timings plus run-level configuration and answers."""

    n: int
    mode: str
    threads: int
    backend: str
    rows: list = field(default_factory=list)
    answers: list = field(default_factory=list)  # one bool array per query batch
    final_parent: np.ndarray = None

    def _total(self, kind):
        sizes = sum(r.size for r in self.rows if r.kind == kind)
        secs = sum(r.seconds for r in self.rows if r.kind == kind)
        return sizes, secs

    @property
    def update_edges(self):
        return self._total(UPDATE)[0]

    @property
    def update_seconds(self):
        return self._total(UPDATE)[1]

    @property
    def update_throughput(self):
        edges, secs = self._total(UPDATE)
        return edges / secs if secs > 0 else 0.0

    @property
    def query_throughput(self):
        qs, secs = self._total(QUERY)
        return qs / secs if secs > 0 else 0.0

    @property
    def total_seconds(self):
        return sum(r.seconds for r in self.rows)


def _make_forest(n, mode):
    if mode == "simple":
        return UnionFindForest(n, find_mode=PRAGMATIC)
    if mode == "workEfficient":
        return UnionFindForest(n, find_mode=PLAIN, route_bulk_find=True)
    if mode == "seqUF":
        return UnionFindForest(n, find_mode=PLAIN)
    if mode == "seqUFPC":
        return UnionFindForest(n, find_mode=PRAGMATIC)
    raise ValueError(f"unknown mode {mode!r}, expected one of {MODES}")


def _iter_batches(stream):
    if isinstance(stream, Stream):
        yield from stream.batches
    else:
        for batch in stream:
            kind = QUERY if isinstance(batch, QueryBatch) else UPDATE
            yield kind, batch


def replay(stream, mode="simple", threads=None, check_oracle=False,
           keep_final_state=False, n=None):
    """Process a stream batch by batch; returns a :class:`RunReport`.

    ``stream`` is a :class:`Stream` or any iterable of batches (then ``n``
    is required).  With ``check_oracle`` a textbook sequential structure
    with full path compression runs in lockstep; any query answer mismatch
    or a final-partition mismatch raises :class:`OracleMismatchError`.
    """
    if isinstance(stream, Stream):
        n = stream.n
    elif n is None:
        raise ValueError("n is required when replaying a bare batch iterable")
    if threads is None:
        threads = _backend.max_threads()
    threads = _backend.set_num_threads(threads)
    forest = _make_forest(n, mode)
    oracle = _make_forest(n, "seqUFPC") if check_oracle else None
    sequential = mode in ("seqUF", "seqUFPC")
    report = RunReport(n=n, mode=mode, threads=threads,
                       backend=_backend.active_backend())
    for index, (kind, batch) in enumerate(_iter_batches(stream)):
        us, vs = batch.us, batch.vs
        if kind == UPDATE:
            t0 = time.perf_counter()
            if sequential:
                forest.apply_edges(us, vs)
            else:
                bulk_update(forest, us, vs)
            dt = time.perf_counter() - t0
            if oracle is not None:
                oracle.apply_edges(us, vs)
        else:
            t0 = time.perf_counter()
            if sequential:
                answers = forest.answer_queries(us, vs)
            else:
                answers = bulk_query(forest, us, vs)
            dt = time.perf_counter() - t0
            report.answers.append(answers)
            if oracle is not None:
                expected = oracle.answer_queries(us, vs)
                if not np.array_equal(answers, expected):
                    raise OracleMismatchError(index, "query answers differ")
        report.rows.append(BatchRow(index, kind, len(batch), dt,
                                    forest.count_components()))
    if oracle is not None:
        from .ufcore import partitions_equal

        if not partitions_equal(forest.parent, oracle.parent):
            raise OracleMismatchError(len(report.rows), "final partition differs")
    if keep_final_state:
        report.final_parent = forest.parent.copy()
    return report


def median_of_trials(reports):
    """Per-row median wall times across trials of one configuration."""
    if len(reports) < 3:
        raise ValueError("need at least 3 trials")
    first = reports[0]
    for other in reports[1:]:
        same = (other.n == first.n and other.mode == first.mode
                and other.threads == first.threads
                and len(other.rows) == len(first.rows)
                and all(a.kind == b.kind and a.size == b.size
                        and a.components_after == b.components_after
                        for a, b in zip(other.rows, first.rows))
                and all(np.array_equal(x, y)
                        for x, y in zip(other.answers, first.answers)))
        if not same:
            raise ValueError("trials come from different configurations")
    merged = RunReport(n=first.n, mode=first.mode, threads=first.threads,
                       backend=first.backend, answers=first.answers)
    for i, row in enumerate(first.rows):
        med = float(np.median([r.rows[i].seconds for r in reports]))
        merged.rows.append(BatchRow(row.index, row.kind, row.size, med,
                                    row.components_after))
    return merged


# ---------------------------------------------------------------------------
# CSV output


REPORT_COLUMNS = ("index", "kind", "size", "seconds", "per_second",
                  "components_after")
CURVE_COLUMNS = ("percent", "components")


def write_report_csv(report, out):
    close = False
    if isinstance(out, (str, bytes)):
        out = open(out, "w", newline="")
        close = True
    try:
        writer = csv.writer(out)
        writer.writerow(REPORT_COLUMNS)
        for row in report.rows:
            writer.writerow([
                row.index,
                "update" if row.kind == UPDATE else "query",
                row.size,
                f"{row.seconds:.9f}",
                f"{row.per_second:.3f}",
                row.components_after,
            ])
    finally:
        if close:
            out.close()


def component_curve(report):
    """(percent-of-update-stream, components) rows, one per update batch.

    Starts at (0.0, n); percentages are cumulative update edges over the
    stream's update total.
    """
    total = report.update_edges
    rows = [(0.0, report.n)]
    seen = 0
    for row in report.rows:
        if row.kind != UPDATE:
            continue
        seen += row.size
        pct = 100.0 * seen / total if total else 100.0
        rows.append((pct, row.components_after))
    return rows


def write_curve_csv(report, out):
    close = False
    if isinstance(out, (str, bytes)):
        out = open(out, "w", newline="")
        close = True
    try:
        writer = csv.writer(out)
        writer.writerow(CURVE_COLUMNS)
        for pct, comps in component_curve(report):
            writer.writerow([f"{pct:.4f}", comps])
    finally:
        if close:
            out.close()


def report_to_csv_string(report):
    buf = io.StringIO()
    write_report_csv(report, buf)
    return buf.getvalue()
