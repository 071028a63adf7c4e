"""Witness generation, satisfiability and containment for JSON Schema."""

from .errors import Timeout, WitnessError
from .json_model import dumps, parse_json
from .pipeline import (
    ContainmentResult,
    PipelineConfig,
    SolveResult,
    check_containment,
    check_equivalence,
    solve,
    solve_doc,
)
from .translator import translate

__all__ = [
    "ContainmentResult",
    "PipelineConfig",
    "SolveResult",
    "Timeout",
    "WitnessError",
    "check_containment",
    "check_equivalence",
    "dumps",
    "parse_json",
    "solve",
    "solve_doc",
    "translate",
]
