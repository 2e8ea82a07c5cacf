"""Exception hierarchy shared by all ngramlex modules.

DomainError marks caller-contract violations (bad parameter values);
DataError subclasses mark problems with the data itself. The CLI maps
DomainError to exit code 1, DataError to 2, OSError to 3.
"""


class NgramlexError(Exception):
    """Base class for all ngramlex errors."""


class DomainError(NgramlexError):
    """A parameter is outside its documented domain."""


class DataError(NgramlexError):
    """Input data cannot be processed as requested."""


class MalformedLine(DataError):
    """An ngram input line has the wrong field count or a non-numeric field."""

    def __init__(self, reason: str, lineno: int | None = None):
        self.reason = reason
        self.lineno = lineno
        where = f" (line {lineno})" if lineno is not None else ""
        super().__init__(f"malformed line{where}: {reason}")


class MalformedRecord(DataError):
    """A totalcounts record is malformed or duplicated."""


class CorruptSnapshot(DataError):
    """A frequency-table snapshot fails its header or total check."""


class EmptyTable(DataError):
    """An operation requires a non-empty frequency table."""


class EmptyRange(DataError):
    """A year or value range selects no data."""


class InsufficientData(DataError):
    """Not enough points anywhere to produce the requested series."""


class InsufficientPoints(DataError):
    """Not enough usable points for a fit."""


class NonPositiveValue(DataError):
    """Log-log fitting requires strictly positive coordinates."""


class NoInteriorMaximum(DataError):
    """The likelihood maximum sits on the search boundary.

    Carries the boundary estimate so callers can still report it.
    """

    def __init__(self, beta_boundary: float, message: str):
        self.beta_boundary = beta_boundary
        super().__init__(message)


class FitDiagnosticError(DataError):
    """An internal sanity check of the optimiser failed (non-concave objective)."""
