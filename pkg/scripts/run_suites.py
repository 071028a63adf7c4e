"""Run the handwritten and containment suites and write a summary.

    python3 scripts/run_suites.py [--timeout 60] [--out results/suites.json]

The handwritten suite reports success / failure / logical-error rates and
timing percentiles, in the same format as ``jswitness corpus``; the
containment suite reports verdict accuracy and counterexample validity.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from jswitness.cli import run_witness, summarize  # noqa: E402
from jswitness.pipeline import PipelineConfig, check_containment  # noqa: E402
from oracles import HANDWRITTEN, containment_cases, handwritten_cases  # noqa: E402


@dataclass
class SuiteConfig:
    timeout: float = 60.0
    out: str = str(ROOT / "results" / "suites.json")


def run_handwritten(config: SuiteConfig) -> dict:
    expected = {name: verdict for name, _, verdict in handwritten_cases()}
    pipeline = PipelineConfig(timeout=config.timeout)
    reports = [run_witness(HANDWRITTEN / name, pipeline) for name in sorted(expected)]
    summary = summarize(reports)
    summary["verdict_mismatches"] = [
        Path(r.schema_path).name
        for r in reports
        if r.outcome in ("witness", "unsat") and (r.outcome == "witness") != (expected[Path(r.schema_path).name] == "sat")
    ]
    return summary


def run_containment(config: SuiteConfig) -> dict:
    pipeline = PipelineConfig(timeout=config.timeout)
    rows = []
    for name, left, right, included in containment_cases():
        start = time.perf_counter()
        res = check_containment(left, right, pipeline)
        rows.append(
            {
                "name": name,
                "expected": included,
                "got": res.included,
                "counterexample_valid": None if res.included else res.validated,
                "ms": round((time.perf_counter() - start) * 1000, 3),
            }
        )
    correct = sum(1 for r in rows if r["expected"] == r["got"])
    return {
        "pairs": len(rows),
        "correct": correct,
        "accuracy_pct": round(100.0 * correct / len(rows), 2) if rows else 0.0,
        "invalid_counterexamples": sum(1 for r in rows if r["counterexample_valid"] is False),
        "rows": rows,
    }


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--timeout", type=float, default=SuiteConfig.timeout)
    p.add_argument("--out", default=SuiteConfig.out)
    config = SuiteConfig(**vars(p.parse_args(argv)))
    result = {"config": asdict(config), "handwritten": run_handwritten(config), "containment": run_containment(config)}
    out = Path(config.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(result, indent=2, sort_keys=True) + "\n")
    hw, ct = result["handwritten"], result["containment"]
    print(
        f"handwritten: {hw['files']} schemas, {hw['success_pct']}% success, {hw['failure_pct']}% failure, "
        f"{hw['logical_errors']} logical errors, {len(hw['verdict_mismatches'])} wrong verdicts, median {hw['median_ms']} ms"
    )
    print(
        f"containment: {ct['pairs']} pairs, {ct['accuracy_pct']}% correct, "
        f"{ct['invalid_counterexamples']} invalid counterexamples"
    )
    print(f"written to {out}")
    ok = hw["failure_pct"] == 0 and not hw["verdict_mismatches"] and ct["correct"] == ct["pairs"]
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
