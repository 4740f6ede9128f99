"""Command line front end for the replay harness.

Exit codes: 0 success, 1 usage error, 2 stream parse error, 3 oracle
mismatch.
"""

import argparse
import sys

from . import _backend, bench
from .gen import StreamSpec, generate


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser():
    p = _Parser(
        prog="bpcc",
        description="Replay a graph stream through the bulk-parallel "
                    "incremental connectivity structure and report throughput.")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH",
                     help="stream file to replay (binary or text)")
    src.add_argument("--generate", metavar="SPEC",
                     help="synthesize a stream, e.g. "
                          "random:n=1048576,m=4000000,seed=1")
    p.add_argument("--batch-size", type=int, default=100_000, metavar="N",
                   help="edges per minibatch for --generate (default 100000)")
    p.add_argument("--mode", choices=bench.MODES, default="simple",
                   help="data structure driving the replay (default simple)")
    p.add_argument("--threads", type=int, default=None, metavar="T",
                   help="parallel runtime threads (default: all available)")
    p.add_argument("--trials", type=int, default=1, metavar="K",
                   help="run K trials and report per-batch median times "
                        "(1, or >= 3)")
    p.add_argument("--check-oracle", action="store_true",
                   help="run the sequential full-compression structure in "
                        "lockstep and fail on any divergence")
    p.add_argument("--out", metavar="CSV", help="write per-batch rows here")
    p.add_argument("--components-out", metavar="CSV",
                   help="write the component-count curve here")
    p.add_argument("--write-stream", metavar="PATH",
                   help="write the stream to PATH and exit without replaying")
    p.add_argument("--text", action="store_true",
                   help="use the text stream format with --write-stream")
    p.add_argument("--backend", choices=("auto", "numba", "numpy"),
                   default=None, help="kernel backend override")
    return p


def _load_stream(args, parser):
    if args.input:
        return bench.read_stream(args.input)
    try:
        spec = StreamSpec.parse(args.generate, batch_size=args.batch_size)
    except ValueError as exc:
        parser.error(str(exc))
    return spec


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.trials != 1 and args.trials < 3:
        parser.error("--trials must be 1 or at least 3")
    if args.batch_size < 1:
        parser.error("--batch-size must be >= 1")
    if args.threads is not None and args.threads < 1:
        parser.error("--threads must be >= 1")
    if args.backend:
        _backend.set_backend(args.backend)

    try:
        source = _load_stream(args, parser)
    except bench.StreamParseError as exc:
        print(f"bpcc: parse error: {exc}", file=sys.stderr)
        return 2

    if args.write_stream:
        stream = (source if isinstance(source, bench.Stream)
                  else bench.Stream(source.n, [(bench.UPDATE, b)
                                               for b in generate(source)]))
        bench.write_stream(args.write_stream, stream, text=args.text)
        print(f"wrote {len(stream.batches)} batches to {args.write_stream}")
        return 0

    _backend.warmup()
    try:
        reports = []
        for _ in range(args.trials):
            stream = (source if isinstance(source, bench.Stream)
                      else generate(source))
            n = source.n if isinstance(source, bench.Stream) else source.n
            reports.append(bench.replay(stream, mode=args.mode,
                                        threads=args.threads,
                                        check_oracle=args.check_oracle, n=n))
    except bench.StreamParseError as exc:
        print(f"bpcc: parse error: {exc}", file=sys.stderr)
        return 2
    except bench.OracleMismatchError as exc:
        print(f"bpcc: {exc}", file=sys.stderr)
        return 3

    report = reports[0] if args.trials == 1 else bench.median_of_trials(reports)

    if args.out:
        bench.write_report_csv(report, args.out)
    if args.components_out:
        bench.write_curve_csv(report, args.components_out)

    upd = report.update_edges
    if upd:
        print(f"updates: {upd} edges in {report.update_seconds:.3f}s "
              f"({report.update_throughput / 1e6:.2f} M edges/s)")
    qrows = [r for r in report.rows if r.kind == bench.QUERY]
    if qrows:
        total_q = sum(r.size for r in qrows)
        print(f"queries: {total_q} in "
              f"{sum(r.seconds for r in qrows):.3f}s "
              f"({report.query_throughput / 1e6:.2f} M queries/s)")
    if report.rows:
        print(f"components after stream: {report.rows[-1].components_after}")
    print(f"mode={report.mode} threads={report.threads} "
          f"backend={report.backend} trials={args.trials}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
