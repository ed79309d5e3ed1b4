"""Exception and warning classes shared by the package."""


class QLommelError(Exception):
    """Base class for all errors raised by qlommel."""


class DomainError(QLommelError, ValueError):
    """Argument outside the region where a formula is defined (pole, branch)."""


class ConvergenceError(QLommelError, ArithmeticError):
    """A series or iteration did not reach the requested tolerance."""


class ScanError(QLommelError):
    """A sign-change scan could not isolate zeros reliably."""


class RangeError(QLommelError, IndexError):
    """A moment table is too short for the requested exponent range."""


class ConfigError(QLommelError, ValueError):
    """Invalid configuration (e.g. an empty parameter grid)."""


class TruncationWarning(UserWarning):
    """A truncated infinite sum may not meet the requested tolerance.

    The estimated size of the neglected tail is stored in ``tail``.
    """

    def __init__(self, message, tail=float("nan")):
        super().__init__(message)
        self.tail = tail
