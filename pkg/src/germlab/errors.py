"""Exception hierarchy for germlab."""


class GermlabError(Exception):
    """Base class for every error raised by this library."""


class PolyParseError(GermlabError):
    """Syntax or name error while parsing a polynomial or a germ file."""

    def __init__(self, message: str, position: int | None = None, line: int | None = None):
        self.position = position
        self.line = line
        where = ""
        if line is not None:
            where += f" at line {line}"
        if position is not None:
            where += f", column {position + 1}" if line is not None else f" at position {position}"
        super().__init__(message + where)


class RingMismatchError(GermlabError):
    """Operands live in different rings, or a variable is missing from a ring."""


class InexactDivisionError(GermlabError):
    """Polynomial division that was promised to be exact left a remainder."""


class DegenerateInputError(GermlabError):
    """Input violates a stated precondition (zero polynomial, degree loss, ...)."""


class ResourceCapError(GermlabError):
    """A configured computation cap was exceeded; never a silent wrong answer."""


class NonIsolatedError(GermlabError):
    """A colength that must be finite is infinite."""


class UnsupportedCaseError(GermlabError):
    """Input falls outside the implemented cases; an explicit refusal, not a guess."""


class SpecValidationError(GermlabError):
    """A germ or unfolding fails its structural invariants."""


class JetCapError(GermlabError):
    """Jet truncation failed to stabilise below the configured order cap."""


class InternalInvariantError(GermlabError):
    """A proven identity failed at runtime; indicates a bug in the engine."""
