"""End-to-end runs: translate, normalize, prepare, generate, re-validate."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .algebra import Not, SchemaDoc, conj, validate_doc
from .errors import Timeout
from .generator import NONE, bottom_up
from .normalizer import Workspace
from .patterns import DEFAULT_STATE_BUDGET, state_budget
from .preparer import dump_prepared, prepare
from .translator import translate


@dataclass
class PipelineConfig:
    timeout: float | None = 3600.0  # seconds, for the whole run
    max_automaton_states: int = DEFAULT_STATE_BUDGET
    minimize_regions: bool = False
    emit: object = None  # callable(stage, text) receiving stage dumps


@dataclass
class SolveResult:
    """Outcome of one witness-generation run on an algebra document."""

    satisfiable: bool
    witness: object = None
    validated: bool = False
    pass_count: int = 0
    variables: int = 0
    variables_created: int = 0
    dropped_disjuncts: int = 0
    timings: dict = field(default_factory=dict)  # stage -> milliseconds

    @property
    def pass_bound(self) -> int:
        return self.variables + 1


class _Clock:
    def __init__(self, config: PipelineConfig):
        self.start = time.monotonic()
        self.timeout = config.timeout
        self.timings: dict = {}
        self._last = self.start

    def lap(self, stage: str) -> None:
        now = time.monotonic()
        self.timings[stage] = round((now - self._last) * 1000, 3)
        self._last = now
        if self.timeout is not None and now - self.start > self.timeout:
            raise Timeout(f"time budget exhausted after stage {stage}")

    def remaining(self):
        if self.timeout is None:
            return None
        return max(0.0, self.timeout - (time.monotonic() - self.start))

    def deadline(self):
        return None if self.timeout is None else self.start + self.timeout


def solve_doc(doc: SchemaDoc, config: PipelineConfig | None = None, clock: _Clock | None = None) -> SolveResult:
    """Find a witness for an algebra document or show that none exists."""
    config = config or PipelineConfig()
    clock = clock or _Clock(config)
    emit = config.emit
    with state_budget(config.max_automaton_states):
        ws = Workspace(doc)
        ws.normalize(emit)
        clock.lap("normalize")
        prep = prepare(ws, clock.deadline(), config.minimize_regions)
        if emit:
            emit("prepared", dump_prepared(prep))
        clock.lap("prepare")
        gen = bottom_up(prep, timeout=clock.remaining())
        clock.lap("generate")
        result = SolveResult(
            satisfiable=gen.witness is not NONE,
            pass_count=gen.passes,
            variables=len(prep.bodies),
            variables_created=len(ws.env) - ws.original_vars,
            dropped_disjuncts=ws.dropped_disjuncts,
        )
        if result.satisfiable:
            result.witness = gen.witness
            result.validated = validate_doc(gen.witness, doc)
            clock.lap("validate")
    result.timings = clock.timings
    return result


def solve(raw_schema, config: PipelineConfig | None = None) -> SolveResult:
    """Witness for a parsed JSON Schema (validated against its translation)."""
    config = config or PipelineConfig()
    clock = _Clock(config)
    doc = translate(raw_schema)
    if config.emit:
        config.emit("algebra", str(doc))
    clock.lap("translate")
    return solve_doc(doc, config, clock)


def difference_doc(s1: SchemaDoc, s2: SchemaDoc) -> SchemaDoc:
    """Document for values of ``s1`` that are not values of ``s2``.

    The two documents must use disjoint variable names (see the ``prefix``
    argument of :func:`translate`).
    """
    clash = set(s1.env) & set(s2.env)
    if clash:
        raise ValueError(f"documents share variable names: {sorted(clash)}")
    return SchemaDoc(conj(s1.root, Not(s2.root)), {**s1.env, **s2.env})


@dataclass
class ContainmentResult:
    included: bool
    counterexample: object = None
    validated: bool = False
    solve: SolveResult | None = None


def check_containment(raw1, raw2, config: PipelineConfig | None = None) -> ContainmentResult:
    """Is every instance of ``raw1`` an instance of ``raw2``?

    When not, the counterexample is checked to satisfy ``raw1`` and to
    violate ``raw2`` with the built-in validator.
    """
    config = config or PipelineConfig()
    clock = _Clock(config)
    d1 = translate(raw1, prefix="a.")
    d2 = translate(raw2, prefix="b.")
    clock.lap("translate")
    res = solve_doc(difference_doc(d1, d2), config, clock)
    if not res.satisfiable:
        return ContainmentResult(True, solve=res)
    j = res.witness
    ok = validate_doc(j, d1) and not validate_doc(j, d2)
    return ContainmentResult(False, j, ok, res)


def check_equivalence(raw1, raw2, config: PipelineConfig | None = None) -> tuple:
    """Both containment results, left-in-right first."""
    return check_containment(raw1, raw2, config), check_containment(raw2, raw1, config)


__all__ = [
    "ContainmentResult",
    "PipelineConfig",
    "SolveResult",
    "check_containment",
    "check_equivalence",
    "difference_doc",
    "solve",
    "solve_doc",
]
