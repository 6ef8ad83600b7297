"""
Error types raised by the workbench.
Every error is a ValueError so callers can treat bad input uniformly;
axiom failures are never raised, they are returned as witnesses.
"""
from typing import Any


class IndexOutOfRangeError(ValueError):
    """An order or profile index outside its enumeration range."""


class VoterOutOfRangeError(ValueError):
    """A voter id that is not in 0..n-1."""


class DimensionMismatchError(ValueError):
    """A profile or order whose (m, n) does not match the table it is used with."""


class SizeGuardError(ValueError):
    """A construction whose table would exceed the configured size guard."""


class EmptyCoalitionError(ValueError):
    """A decisiveness question asked about the empty coalition."""


class RuleSpecError(ValueError):
    """An invalid rule specification."""


class PreconditionError(ValueError):
    """
    A lemma procedure was called on input that does not meet its stated hypothesis.
    Args:
        message: Human readable description.
        voter: Offending voter, when one can be named.
        position: Offending position in that voter's ranking, when relevant.
    """

    def __init__(self, message: str, voter: int | None = None, position: int | None = None):
        super().__init__(message)
        self.voter = voter
        self.position = position


class PremiseError(ValueError):
    """
    A lemma premise (decisiveness, unanimity) is refuted by the table.
    The refuting certificate is kept on `violation`.
    """

    def __init__(self, message: str, violation: Any):
        super().__init__(message)
        self.violation = violation


class TableFormatError(ValueError):
    """
    Malformed table or trace file.
    Args:
        message: What is wrong.
        line: 1-based line number, when known.
        offset: 0-based character offset within the line, when known.
    """

    def __init__(self, message: str, line: int | None = None, offset: int | None = None):
        location = ""
        if line is not None:
            location = f" (line {line}" + (f", offset {offset}" if offset is not None else "") + ")"
        super().__init__(f"{message}{location}")
        self.line = line
        self.offset = offset
