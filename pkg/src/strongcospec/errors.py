class StrongCospecError(Exception):
    """Base class for errors raised by this package."""


class DomainError(StrongCospecError, ValueError):
    """An argument lies outside an operation's domain (bad vertex, zero poly...)."""


class Graph6Error(StrongCospecError, ValueError):
    """Malformed graph6 input."""


class ConfigurationError(StrongCospecError, ValueError):
    """A size bound or other configured limit was exceeded."""


class PreconditionError(StrongCospecError, ValueError):
    """A lemma-specific hypothesis does not hold at the requested point."""


class UndefinedExtendedArithmetic(StrongCospecError, ArithmeticError):
    """An extended-real operation not covered by the infinity conventions."""


class PrecisionError(StrongCospecError, ArithmeticError):
    """Numeric work could not be certified at the available precision."""


class InfiniteEntryError(StrongCospecError, ArithmeticError):
    """A projector entry formula met a pole of order above one."""


class VerificationFailure(StrongCospecError, AssertionError):
    """A mathematical invariant was violated; carries a self-contained dump."""

    def __init__(self, message: str, dump: dict | None = None):
        super().__init__(message)
        self.dump = dump or {}
