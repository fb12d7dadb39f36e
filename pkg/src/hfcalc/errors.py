"""Exception hierarchy shared by all hfcalc modules.

Every domain failure raised by the library derives from :class:`CalcError`,
so callers (in particular the CLI) can distinguish "the mathematics refused"
from genuine bugs.
"""


class CalcError(Exception):
    """Base class for all domain errors raised by hfcalc."""


class ModelError(CalcError):
    """A space model violates one of its structural invariants."""


class TheoryError(CalcError):
    """A coefficient theory is malformed or unknown."""


class EngineError(CalcError):
    """An engine query was asked outside its domain of validity."""


class RingError(CalcError):
    """A ring presentation is missing or malformed."""


class CurveError(CalcError):
    """Invalid elliptic-curve data or a point/divisor off the curve."""


class ParseError(CalcError):
    """A space or theory document failed to parse or validate."""
