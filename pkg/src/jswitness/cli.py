"""Command-line interface.

Subcommands::

    jswitness witness SCHEMA        print a witness (exit 0) or report unsat (exit 1)
    jswitness sat SCHEMA            same run, prints only the verdict
    jswitness contain S1 S2         INCLUDED, or a counterexample in S1 but not S2
    jswitness equiv S1 S2           EQUIVALENT, or a one-sided counterexample
    jswitness corpus DIR            one JSON-lines report per *.json file plus a summary

Exit codes: 0 witness / included / equivalent, 1 unsatisfiable / not
included, 2 error, 3 timeout.
"""

from __future__ import annotations

import argparse
import json
import logging
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .errors import Timeout, WitnessError
from .json_model import dumps, parse_json
from .patterns import DEFAULT_STATE_BUDGET
from .pipeline import PipelineConfig, check_containment, solve

EXIT_OK, EXIT_NO, EXIT_ERROR, EXIT_TIMEOUT = 0, 1, 2, 3
STAGES = ("algebra", "notelim", "strat", "gdnf", "canon", "prepared")

log = logging.getLogger("jswitness")


@dataclass
class RunReport:
    schema_path: str
    outcome: str  # witness | unsat | error | timeout
    witness: object = None
    validated: bool = False
    timings: dict = field(default_factory=dict)
    pass_count: int = 0
    variables_created: int = 0
    dropped_disjuncts: int = 0
    message: str = ""
    elapsed_ms: float = 0.0

    def to_json(self, with_time: bool = True) -> str:
        d = asdict(self)
        d["witness"] = None
        if not with_time:
            d.pop("timings")
            d.pop("elapsed_ms")
        text = json.dumps(d, sort_keys=True, ensure_ascii=False)
        if self.outcome == "witness":
            # splice the witness in with exact number formatting
            text = text.replace('"witness": null', '"witness": ' + dumps(self.witness), 1)
        return text


def load_schema(path) -> object:
    return parse_json(Path(path).read_text(encoding="utf-8"))


def run_witness(path, config: PipelineConfig) -> RunReport:
    """Full pipeline on one file; never raises."""
    start = time.monotonic()
    report = RunReport(str(path), "error")
    try:
        res = solve(load_schema(path), config)
        report.timings = res.timings
        report.pass_count = res.pass_count
        report.variables_created = res.variables_created
        report.dropped_disjuncts = res.dropped_disjuncts
        if res.satisfiable:
            report.witness = res.witness
            report.validated = res.validated
            report.outcome = "witness" if res.validated else "error"
            if not res.validated:
                report.message = "generated value failed re-validation"
        else:
            report.outcome = "unsat"
    except Timeout as e:
        report.outcome, report.message = "timeout", str(e)
    except (WitnessError, OSError, ValueError, RecursionError) as e:
        report.outcome, report.message = "error", f"{type(e).__name__}: {e}"
    report.elapsed_ms = round((time.monotonic() - start) * 1000, 3)
    return report


_EXIT = {"witness": EXIT_OK, "unsat": EXIT_NO, "error": EXIT_ERROR, "timeout": EXIT_TIMEOUT}


def _config(args) -> PipelineConfig:
    emit = None
    if getattr(args, "emit_stage", None) or getattr(args, "emit_algebra", False):
        wanted = set(args.emit_stage or [])
        if args.emit_algebra:
            wanted.add("algebra")

        def emit(stage, text):
            if stage in wanted:
                print(f"== {stage}", file=sys.stderr)
                print(text, file=sys.stderr)

    return PipelineConfig(
        timeout=args.timeout,
        max_automaton_states=args.max_automaton_states,
        emit=emit,
    )


def cmd_witness(args) -> int:
    report = run_witness(args.schema, _config(args))
    if report.outcome == "witness":
        print(dumps(report.witness))
    else:
        print(report.outcome.upper() if report.outcome == "unsat" else f"{report.outcome}: {report.message}")
    if args.report:
        print(report.to_json(), file=sys.stderr)
    return _EXIT[report.outcome]


def cmd_sat(args) -> int:
    report = run_witness(args.schema, _config(args))
    verdict = {"witness": "SATISFIABLE", "unsat": "UNSATISFIABLE"}.get(report.outcome)
    print(verdict or f"{report.outcome}: {report.message}")
    return _EXIT[report.outcome]


def _containment(path1, path2, config):
    try:
        return check_containment(load_schema(path1), load_schema(path2), config), None
    except Timeout as e:
        return None, ("timeout", str(e))
    except (WitnessError, OSError, ValueError, RecursionError) as e:
        return None, ("error", f"{type(e).__name__}: {e}")


def _failure(err) -> int:
    kind, msg = err
    print(f"{kind}: {msg}")
    return EXIT_TIMEOUT if kind == "timeout" else EXIT_ERROR


def cmd_contain(args) -> int:
    res, err = _containment(args.left, args.right, _config(args))
    if err:
        return _failure(err)
    if res.included:
        print("INCLUDED")
        return EXIT_OK
    if not res.validated:
        print("error: counterexample failed re-validation")
        return EXIT_ERROR
    print("NOT INCLUDED")
    print(dumps(res.counterexample))
    return EXIT_NO


def cmd_equiv(args) -> int:
    config = _config(args)
    for left, right, label in ((args.left, args.right, "left-not-right"), (args.right, args.left, "right-not-left")):
        res, err = _containment(left, right, config)
        if err:
            return _failure(err)
        if not res.included:
            if not res.validated:
                print("error: counterexample failed re-validation")
                return EXIT_ERROR
            print(f"NOT EQUIVALENT ({label})")
            print(dumps(res.counterexample))
            return EXIT_NO
    print("EQUIVALENT")
    return EXIT_OK


def _corpus_job(item):
    path, timeout, states = item
    return run_witness(path, PipelineConfig(timeout=timeout, max_automaton_states=states))


def summarize(reports) -> dict:
    n = len(reports)
    counts = {k: sum(1 for r in reports if r.outcome == k) for k in ("witness", "unsat", "error", "timeout")}
    times = sorted(r.elapsed_ms for r in reports if r.outcome in ("witness", "unsat"))

    def pct(k):
        return round(100.0 * k / n, 2) if n else 0.0

    return {
        "summary": True,
        "files": n,
        "success_pct": pct(counts["witness"] + counts["unsat"]),
        "failure_pct": pct(counts["error"] + counts["timeout"]),
        "logical_errors": sum(1 for r in reports if r.outcome == "witness" and not r.validated),
        **counts,
        "median_ms": round(statistics.median(times), 3) if times else None,
        "p95_ms": round(times[min(len(times) - 1, int(0.95 * len(times)))], 3) if times else None,
        "avg_ms": round(statistics.fmean(times), 3) if times else None,
    }


def cmd_corpus(args) -> int:
    files = sorted(Path(args.directory).glob("*.json"))
    items = [(str(f), args.timeout, args.max_automaton_states) for f in files]
    if args.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_corpus_job, items))
    else:
        reports = [_corpus_job(i) for i in items]
    for r in reports:
        print(r.to_json(with_time=not args.seed_less))
    summary = summarize(reports)
    if args.seed_less:
        for k in ("median_ms", "p95_ms", "avg_ms"):
            summary.pop(k)
    print(json.dumps(summary, sort_keys=True))
    print(
        f"{summary['files']} files: {summary['success_pct']}% success, "
        f"{summary['failure_pct']}% failure, {summary['logical_errors']} logical errors",
        file=sys.stderr,
    )
    return EXIT_OK if summary["error"] + summary["timeout"] == 0 else EXIT_ERROR


def _common_options(default_timeout: float) -> argparse.ArgumentParser:
    # built afresh for each subcommand: parent parsers share their actions,
    # so a per-subcommand default would otherwise leak into the others
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--timeout", type=float, default=default_timeout, help="seconds per run")
    common.add_argument(
        "--max-automaton-states", type=int, default=DEFAULT_STATE_BUDGET,
        help="state budget for each automaton construction",
    )
    common.add_argument("--emit-algebra", action="store_true", help="print the translated document to stderr")
    common.add_argument(
        "--emit-stage", action="append", choices=STAGES, metavar="STAGE",
        help=f"print an intermediate document to stderr; one of {', '.join(STAGES)}",
    )
    common.add_argument(
        "--seed-less", action="store_true",
        help="omit timings from reports so output is byte-identical across runs",
    )
    common.add_argument("-v", "--verbose", action="store_true")
    return common


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jswitness", description="JSON Schema witness generation")
    sub = p.add_subparsers(dest="command", required=True)
    w = sub.add_parser("witness", parents=[_common_options(3600.0)], help="generate a witness")
    w.add_argument("schema")
    w.add_argument("--report", action="store_true", help="also print a JSON run report to stderr")
    w.set_defaults(func=cmd_witness)
    s = sub.add_parser("sat", parents=[_common_options(3600.0)], help="decide satisfiability")
    s.add_argument("schema")
    s.set_defaults(func=cmd_sat)
    for name, func, text in (("contain", cmd_contain, "containment check"), ("equiv", cmd_equiv, "equivalence check")):
        c = sub.add_parser(name, parents=[_common_options(3600.0)], help=text)
        c.add_argument("left")
        c.add_argument("right")
        c.set_defaults(func=func)
    c = sub.add_parser("corpus", parents=[_common_options(60.0)], help="run every *.json schema in a directory")
    c.add_argument("directory")
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
