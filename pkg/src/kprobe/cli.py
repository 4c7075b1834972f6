"""Command-line entry point.

Exit codes: 0 accepted / ok, 1 rejected / mismatch, 2 malformed input or bad
parameters, 3 oracle budget exceeded. Payload goes to stdout, diagnostics to
stderr.
"""

from __future__ import annotations

import argparse
import math
import os
import statistics
import sys
import time
from pathlib import Path
from typing import Sequence

import numpy as np

from .cotree import CotreeSyntaxError, MalformedCotreeError, parse, serialize
from .fileformat import GraphFormatError, parse_graph, serialize_graph
from .generator import generate
from .graph import LabeledGraph, validate
from .oracle import DEFAULT_MAX_FILL, OracleStatus, first_discrepancy, oracle_is_kprobe, verify_embedding
from .recognizer import Accepted, recognize

EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


class InputError(Exception):
    """Anything that maps to exit code 2."""


def _error(msg: str) -> None:
    prefix = "error:"
    if sys.stderr.isatty() and "NO_COLOR" not in os.environ:
        prefix = "\x1b[31merror:\x1b[0m"
    print(f"{prefix} {msg}", file=sys.stderr)


def _read_text(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def load_instance(path: str) -> LabeledGraph:
    """Parse and validate a graph file, raising :class:`InputError` with a line number."""
    lines: dict[tuple[int, int], int] = {}
    try:
        g = parse_graph(_read_text(path), edge_lines=lines)
    except GraphFormatError as exc:
        raise InputError(f"{path}: {exc}") from None
    report = validate(g)
    if not report.ok:
        v = report.violations[0]
        where = lines.get(v.edge)
        loc = f"line {where}: " if where is not None else ""
        raise InputError(f"{path}: {loc}{v.describe()}")
    return g


def _fmt_set(vs: frozenset[int] | Sequence[int]) -> str:
    return "{" + ",".join(str(v + 1) for v in sorted(vs)) + "}"


def cmd_recognize(args: argparse.Namespace) -> int:
    g = load_instance(args.graph)
    result = recognize(g)
    if args.counters:
        print(result.counters, file=sys.stderr)
    if isinstance(result, Accepted):
        out = serialize(result.cotree, args.format, ascii=args.ascii)
        sys.stdout.write(out if out.endswith("\n") else out + "\n")
        return EXIT_OK
    print("rejected " + " ".join(_fmt_set(s) for s in result.remaining))
    return EXIT_NO


def cmd_verify(args: argparse.Namespace) -> int:
    g = load_instance(args.graph)
    try:
        t = parse(_read_text(args.certificate), n=g.n)
    except (CotreeSyntaxError, MalformedCotreeError) as exc:
        raise InputError(f"{args.certificate}: {exc}") from None
    if verify_embedding(g, t):
        print("ok")
        return EXIT_OK
    d = first_discrepancy(g, t)
    print(f"mismatch {d.describe()}" if d else "mismatch")
    return EXIT_NO


def cmd_oracle(args: argparse.Namespace) -> int:
    g = load_instance(args.graph)
    res = oracle_is_kprobe(g, args.max_fill)
    if res.status is OracleStatus.ACCEPTED:
        print("fill:" + "".join(" " + _fmt_set(e) for e in res.fill or ()))
        return EXIT_OK
    if res.status is OracleStatus.REJECTED:
        print("rejected")
        return EXIT_NO
    print(f"budget_exceeded candidates={res.candidates} max_fill={args.max_fill}")
    return EXIT_BUDGET


def _probability(text: str) -> float:
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= p <= 1.0:
        raise argparse.ArgumentTypeError(f"probability must lie in [0, 1], got {p}")
    return p


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def cmd_generate(args: argparse.Namespace) -> int:
    g, witness = generate(args.n, args.k, args.membership_prob, args.join_prob, args.seed)
    cert = serialize(witness) + "\n"
    comments: tuple[str, ...] = ()
    witness_path = args.witness_out
    if args.with_witness and witness_path is None:
        if args.out is not None:
            witness_path = args.out + ".cert"
        else:
            comments = (f"witness {cert.strip()}",)
    text = serialize_graph(g, comments)
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
    if args.with_witness and witness_path is not None:
        Path(witness_path).write_text(cert, encoding="utf-8")
    return EXIT_OK


def bench_seed(seed: int, n: int, rep: int) -> int:
    return seed * 1_000_003 + n * 1009 + rep


def loglog_slope(ns: Sequence[int], times: Sequence[float]) -> float:
    """Least-squares slope of log(time) against log(n); nan with fewer than two sizes."""
    if len(set(ns)) < 2 or any(t <= 0 for t in times):
        return math.nan
    slope, _ = np.polyfit(np.log(ns), np.log(times), 1)
    return float(slope)


def run_bench(
    n_list: Sequence[int],
    k: int,
    seed: int,
    reps: int,
    membership_prob: float = 0.3,
    join_prob: float = 0.5,
) -> tuple[list[tuple], float]:
    """Time :func:`recognize` on generated instances.

    Returns CSV rows ``(n, k, rep, millis, twin_tests, pair_probes,
    orth_tests)`` and the fitted slope of median time against n.
    """
    recognize(generate(2, k, seed=0)[0])  # JIT warm-up, not timed
    rows = []
    medians = []
    for n in n_list:
        times = []
        for rep in range(reps):
            g, _ = generate(n, k, membership_prob, join_prob, bench_seed(seed, n, rep))
            t0 = time.perf_counter()
            res = recognize(g)
            ms = (time.perf_counter() - t0) * 1000.0
            c = res.counters
            rows.append((n, k, rep, ms, c.twin_tests, c.pair_probes, c.orth_tests))
            times.append(ms)
        medians.append(statistics.median(times))
    return rows, loglog_slope(list(n_list), medians)


def _n_list(text: str) -> list[int]:
    try:
        ns = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad --n-list {text!r}") from None
    if not ns or any(n < 1 for n in ns):
        raise argparse.ArgumentTypeError("--n-list needs positive sizes")
    return ns


def cmd_bench(args: argparse.Namespace) -> int:
    rows, slope = run_bench(args.n_list, args.k, args.seed, args.reps, args.membership_prob, args.join_prob)
    print("n,k,rep,millis,twin_tests,pair_probes,orth_tests")
    for n, k, rep, ms, tt, pp, ot in rows:
        print(f"{n},{k},{rep},{ms:.3f},{tt},{pp},{ot}")
    print(f"slope={slope:.3f}" if not math.isnan(slope) else "slope=nan")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        _error(message)
        sys.exit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kprobe", description="Recognize labeled k-probe cographs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("recognize", help="run the twin-merging recognizer")
    p.add_argument("graph")
    p.add_argument("--format", choices=("sexp", "dot"), default="sexp")
    p.add_argument("--ascii", action="store_true", help="DOT labels x/u instead of ⊗/⊕")
    p.add_argument("--counters", action="store_true", help="print work counters to stderr")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("verify", help="check a cotree certificate against a graph")
    p.add_argument("graph")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force fill enumeration")
    p.add_argument("graph")
    p.add_argument("--max-fill", type=_nonneg, default=DEFAULT_MAX_FILL)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("generate", help="emit a random k-probe cograph")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_nonneg, default=0)
    p.add_argument("--membership-prob", type=_probability, default=0.3)
    p.add_argument("--join-prob", type=_probability, default=0.5)
    p.add_argument("--seed", type=_nonneg, default=0)
    p.add_argument("--out", help="graph file (default: stdout)")
    p.add_argument("--with-witness", action="store_true", help="also emit the witness cotree")
    p.add_argument("--witness-out", help="witness file (default: <out>.cert, or a comment line on stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="time recognition on generated instances")
    p.add_argument("--n-list", type=_n_list, default=[25, 50, 100, 200])
    p.add_argument("--k", type=_nonneg, default=4)
    p.add_argument("--seed", type=_nonneg, default=0)
    p.add_argument("--reps", type=_positive, default=3)
    p.add_argument("--membership-prob", type=_probability, default=0.3)
    p.add_argument("--join-prob", type=_probability, default=0.5)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        _error(str(exc))
        return EXIT_INPUT
    except OSError as exc:
        _error(str(exc))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
