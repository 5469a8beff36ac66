# --- --- --- Imports --- --- ---
# STD
from __future__ import annotations
import argparse
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
import logging
from pathlib import Path
import sys
from typing import TextIO
# 3RD
# Project
from gateinvariants.config import DEFAULT_TOLERANCES, REFERENCE_CORRELATION, ParallelOptions
from gateinvariants.datamodel import NamedGate
from gateinvariants.ensemble.edges import edge_sweep, get_edge
from gateinvariants.ensemble.report_io import report_to_json, write_records_csv, write_report_csv
from gateinvariants.ensemble.study import SamplingMode, analyze_gate, scatter_study
from gateinvariants.errors import GateInvariantsError
from gateinvariants.verify import VerifyOptions, run_verification, summarize


# --- --- --- Logger --- --- ---
logger = logging.getLogger(__name__)


# --- --- --- Constants --- --- ---

__APPNAME__ = "gateinvariants"

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2


# --- --- --- Helpers --- --- ---

@contextmanager
def _output(path:Path|None) -> Iterator[TextIO]:
    """`path` opened for writing, or stdout when None."""
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="") as stream:
        yield stream
# End of def _output


def _parallel(args:argparse.Namespace) -> ParallelOptions:
    return ParallelOptions(workers=max(args.workers, 1))


# --- --- --- Commands --- --- ---

def cmd_analyze(args:argparse.Namespace) -> int:
    source = args.file if args.file is not None else args.gate
    report = analyze_gate(source, mc_samples=args.mc_samples, seed=args.seed, parallel=_parallel(args), tol=DEFAULT_TOLERANCES)
    with _output(args.out) as stream:
        if args.csv:
            write_report_csv(report, stream)
        else:
            stream.write(report_to_json(report) + "\n")
    return EXIT_OK
# End of def cmd_analyze


def cmd_edge(args:argparse.Namespace) -> int:
    edge = get_edge(args.name)
    records = edge_sweep(edge, args.steps)
    with _output(args.out) as stream:
        write_records_csv(records, stream)
    return EXIT_OK


def cmd_scatter(args:argparse.Namespace) -> int:
    records, r = scatter_study(args.n, args.seed, args.mode, _parallel(args))
    logger.info(f"pearson(K_Sch, L) = {r:.6f}, published reference {REFERENCE_CORRELATION}, gap {abs(r - REFERENCE_CORRELATION):.4f}")
    with _output(args.out) as stream:
        write_records_csv(records, stream, pearson=r)
    return EXIT_OK


def cmd_verify(args:argparse.Namespace) -> int:
    opts = VerifyOptions.scaled(args.n, args.seed, _parallel(args))
    results = run_verification(options=opts)
    summary = summarize(results, opts)
    sys.stdout.write(summary.model_dump_json(indent=2) + "\n")
    for r in results:
        if not r.ok:
            logger.error(f"Check {r.name} failed: {r.error}")
    return EXIT_OK if summary.ok else EXIT_VERIFY_FAILED
# End of def cmd_verify


# --- --- --- Parser --- --- ---

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=__APPNAME__, description="Two-qubit gate invariants, operator entanglement and entangling power.")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="Characterize one gate")
    source = p_analyze.add_mutually_exclusive_group(required=True)
    source.add_argument("--gate", type=str, help=f"Named gate: {', '.join(g.value for g in NamedGate)}")
    source.add_argument("--file", type=Path, help="JSON matrix file: {\"matrix\": 4x4 of [re, im]}")
    p_analyze.add_argument("--mc-samples", type=int, default=0, help="Monte-Carlo entangling power samples (0: skip)")
    p_analyze.add_argument("--seed", type=int, default=0)
    p_analyze.add_argument("--workers", type=int, default=1)
    fmt = p_analyze.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report (default)")
    fmt.add_argument("--csv", action="store_true", help="quantity,value CSV report")
    p_analyze.add_argument("--out", type=Path, default=None, help="Output file (default: stdout)")
    p_analyze.set_defaults(func=cmd_analyze)

    p_edge = sub.add_parser("edge", help="Sweep a chamber or polyhedron edge")
    p_edge.add_argument("--name", type=str, required=True, help="Edge name, e.g. OA1, LQ, A2M")
    p_edge.add_argument("--steps", type=int, required=True, help="Number of equally spaced points, >= 2")
    p_edge.add_argument("--out", type=Path, default=None, help="Output CSV (default: stdout)")
    p_edge.set_defaults(func=cmd_edge)

    p_scatter = sub.add_parser("scatter", help="K_Sch vs L over random gates")
    p_scatter.add_argument("--n", type=int, required=True)
    p_scatter.add_argument("--seed", type=int, required=True)
    p_scatter.add_argument("--mode", type=str, choices=[m.value for m in SamplingMode], default=SamplingMode.CHAMBER.value)
    p_scatter.add_argument("--workers", type=int, default=1)
    p_scatter.add_argument("--out", type=Path, default=None, help="Output CSV (default: stdout)")
    p_scatter.set_defaults(func=cmd_scatter)

    p_verify = sub.add_parser("verify", help="Run the cross-formula identity suite")
    p_verify.add_argument("--n", type=int, default=1000)
    p_verify.add_argument("--seed", type=int, default=20240)
    p_verify.add_argument("--workers", type=int, default=1)
    p_verify.set_defaults(func=cmd_verify)
    return parser
# End of def build_parser


# --- --- --- Main --- --- ---

def main(argv:Sequence[str]|None=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 after --help
        return e.code if isinstance(e.code, int) else EXIT_INPUT_ERROR

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        return args.func(args)
    except GateInvariantsError as e:
        logger.error(str(e))
        return EXIT_INPUT_ERROR
    except OSError as e:
        logger.error(f"Cannot write output: {e}")
        return EXIT_INPUT_ERROR
# End of def main


if __name__ == "__main__":
    sys.exit(main())
