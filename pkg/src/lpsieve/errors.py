"""Exception hierarchy shared by all lpsieve modules."""


class LpSieveError(Exception):
    """Base class for all library errors."""


class RankDeficient(LpSieveError):
    """The given matrix does not have full rank."""


class ListCapExceeded(LpSieveError):
    """The sieve list grew past its cap (length guess too small or cap too tight)."""


class AllZero(LpSieveError):
    """Every candidate vector (and every pairwise difference) is zero."""


class SolverFailed(LpSieveError):
    """No acceptable solution was found within the retry/cap budget."""


class DimensionTooLarge(LpSieveError):
    """Exact enumeration was requested above the guarded dimension."""


class GroundSetTooLarge(LpSieveError):
    """The grid-cover ground set would not fit in the configured memory guard."""


class RejectionBudgetExceeded(LpSieveError):
    """Rejection sampling acceptance ratio too small for the configured budget."""


class QuadratureFailure(LpSieveError):
    """Numeric quadrature could not reach the requested accuracy."""


class ParseError(LpSieveError):
    """An instance file could not be parsed."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
