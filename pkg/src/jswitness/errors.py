"""Exception types raised across the pipeline.

Every error inherits from :class:`WitnessError` so callers (the CLI in
particular) can turn any failure into a single ``error`` outcome.
"""


class WitnessError(Exception):
    """Base class for all errors raised by this package."""


class JsonError(WitnessError):
    """Malformed JSON text, duplicate member names, or non-finite numbers."""


class SchemaError(WitnessError):
    """A keyword carries a value of the wrong shape (e.g. ``"minimum": "x"``)."""


class UnsupportedPattern(WitnessError):
    """The regular expression uses lookaround, backreferences or flags."""


class AutomatonTooLarge(WitnessError):
    """Automaton construction exceeded the configured state budget."""


class UnguardedRecursion(WitnessError):
    """A variable depends on itself without passing through a typed operator."""


class UndefinedVariable(WitnessError):
    """An environment references a variable it does not define."""


class UnboundVariable(WitnessError):
    """Assignment evaluation met a variable absent from the assignment."""


class MissingComplement(WitnessError):
    """A complement was requested before not-completion created it."""


class UnresolvableRef(WitnessError):
    """A ``$ref`` points outside the document or to a missing location."""


class UnsupportedKeyword(WitnessError):
    """A keyword has validation semantics that cannot be honoured."""


class ExpansionBudgetExceeded(WitnessError):
    """A size guard (propertyNames expansion, reference copying) tripped."""


class Timeout(WitnessError):
    """The wall-clock budget for one run was exhausted."""
