"""Bulk-parallel incremental graph connectivity.

A union-find forest that ingests minibatches of edges and answers
minibatches of connectivity queries with internally parallel bulk
operations, plus seeded stream generators and a benchmark harness.
"""

from ._backend import (active_backend, get_num_threads, max_threads,
                       set_backend, set_num_threads, warmup)
from .bench import (OracleMismatchError, RunReport, Stream, StreamParseError,
                    component_curve, median_of_trials, read_stream, replay,
                    write_stream)
from .bulk import (EdgeBatch, QueryBatch, UpdateStats, bulk_query,
                   bulk_update, parallel_join)
from .bulkfind import (BulkFindResult, ResponseDistributor, build_rd,
                       bulk_find, distribute_responses, mk_frontier)
from .concc import ComponentPartition, connected_components
from .gen import StreamSpec, generate
from .parprim import (get_grain_size, int_sort, int_sort_perm, pack,
                      prefix_sum, remove_dup, set_grain_size)
from .parprim import filter as filter_seq
from .ufcore import PLAIN, PRAGMATIC, UnionFindForest, partitions_equal

__version__ = "0.1.0"

__all__ = [
    "BulkFindResult", "ComponentPartition", "EdgeBatch", "OracleMismatchError",
    "PLAIN", "PRAGMATIC", "QueryBatch", "ResponseDistributor", "RunReport",
    "Stream", "StreamParseError", "StreamSpec", "UnionFindForest",
    "UpdateStats", "active_backend", "build_rd", "bulk_find", "bulk_query",
    "bulk_update", "component_curve", "connected_components",
    "distribute_responses", "filter_seq", "generate", "get_grain_size",
    "get_num_threads", "int_sort", "int_sort_perm", "max_threads",
    "median_of_trials", "mk_frontier", "pack", "parallel_join",
    "partitions_equal", "prefix_sum", "read_stream", "remove_dup", "replay",
    "set_backend", "set_grain_size", "set_num_threads", "warmup",
    "write_stream",
]
