"""
garside/errors.py

Exception hierarchy. Each class carries the exit code the CLI uses for it:
1 for computational failures, 2 for bad input.
"""

from typing import Any, Optional, Sequence, Tuple


class GarsideError(Exception):
    """Base class for every toolkit error."""

    exit_code = 1


class PresentationSyntaxError(GarsideError, ValueError):
    """Malformed presentation text; carries the 1-based line and column."""

    exit_code = 2

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{where}{message}")


class UndeclaredGenerator(PresentationSyntaxError):
    pass


class SourceTargetMismatch(PresentationSyntaxError):
    pass


class MalformedTable(GarsideError, ValueError):
    """Germ or RC table that cannot be read (e.g. identity missing)."""

    exit_code = 2


class NotComplemented(GarsideError):
    """The presentation has no syntactic right-complement."""

    def __init__(self, pair: Tuple[str, str], reason: str = ""):
        self.pair = pair
        detail = f" ({reason})" if reason else ""
        super().__init__(f"not right-complemented at pair {pair[0]}, {pair[1]}{detail}")


class ReversingDiverged(GarsideError):
    def __init__(self, outcome: Any, message: Optional[str] = None):
        self.outcome = outcome
        reason = getattr(outcome, "reason", None) or "budget"
        super().__init__(message or f"reversing diverged ({reason})")


class BackendInapplicable(GarsideError):
    pass


class OracleUnavailable(BackendInapplicable):
    pass


class Inconclusive(GarsideError):
    pass


class CapExceeded(Inconclusive):
    pass


class NotUnique(GarsideError):
    def __init__(self, message: str, candidates: Sequence[Any] = ()):
        self.candidates = list(candidates)
        super().__init__(message)


class NoCommonLeftMultiple(GarsideError):
    pass


class NotNoetherian(GarsideError):
    pass


class NoHead(GarsideError):
    pass


class NotLeftDisjoint(GarsideError):
    pass


class NotExpressible(GarsideError):
    pass


class NotBounded(GarsideError):
    pass


class NotBijective(GarsideError):
    pass


class InvariantViolation(GarsideError):
    """An internally asserted theorem failed to hold: a bug, not bad input."""
