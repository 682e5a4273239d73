"""Exception hierarchy shared by every module."""


class BinorderError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(BinorderError, ValueError):
    """An argument lies outside the supported range."""


class ValidationError(BinorderError, ValueError):
    """An identity or inequality spec fails its constraints."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class ResourceError(BinorderError):
    """The requested computation exceeds the configured resource limits."""


class InternalInvariantViolation(BinorderError, AssertionError):
    """A result contradicts a proven guarantee; indicates a bug."""


class ParseError(BinorderError, ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")
