"""Exception taxonomy shared by every module in the package."""


class QIRadarError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateInput(QIRadarError):
    """An input value lies outside the operation's domain (zero vector, bad
    probability, non-positive power, and so on)."""


class DimensionMismatch(QIRadarError):
    """Operands disagree in shape or subsystem layout, or exceed the supported
    Hilbert dimension."""


class NumericalDomain(QIRadarError):
    """A matrix property or numerical result violates its contract by more
    than the allowed roundoff window."""


class ParseError(QIRadarError):
    """A scenario document is malformed. ``line`` carries the offending line
    number when known."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class ValidationError(QIRadarError):
    """A parsed field violates a range or consistency constraint. ``field``
    names the offending key."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field
