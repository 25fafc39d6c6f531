"""Exception types shared across the package.

The CLI maps these onto exit codes: insufficient depth/data -> 2,
uncertified result -> 3, budget exceeded -> 4, anything else -> 1.
"""


class SubshiftLabError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(SubshiftLabError, ValueError):
    """A precondition on arguments was violated."""


class UnsupportedError(SubshiftLabError):
    """The operation does not support this input shape (e.g. non-binary domain)."""


class PowersOfSameWordError(SubshiftLabError):
    """u and v are powers of a common word, so the periodic suffix scan never terminates."""


class NotCommutingError(SubshiftLabError):
    """uv != vu, so u and v share no common power decomposition."""


class BudgetExceededError(SubshiftLabError):
    """Generating the requested word would exceed the symbol budget."""

    def __init__(self, predicted_length, budget):
        super().__init__(
            f"predicted length {predicted_length} exceeds budget {budget}"
        )
        self.predicted_length = predicted_length
        self.budget = budget


class InsufficientDepthError(SubshiftLabError):
    """Generated data is too shallow to certify the requested lengths."""

    def __init__(self, message, first_mismatch=None):
        super().__init__(message)
        self.first_mismatch = first_mismatch


class InsufficientDataError(SubshiftLabError):
    """Raw input data ran out before the requested analysis depth."""


class OutOfRangeError(SubshiftLabError):
    """Query length lies below the closed-form formula's valid range."""


class NotAConcatenationError(SubshiftLabError):
    """The word admits no parse into the requested block pair."""


class ComplexityTooHighError(SubshiftLabError):
    """Input data is not a low-complexity stream of the supported family."""


class ScheduleTooTightError(SubshiftLabError):
    """The prime search exhausted its cap under the given growth schedule."""


class NotApplicableError(SubshiftLabError):
    """Structural precondition (e.g. a unit complexity jump) does not hold."""


class BoundViolationError(SubshiftLabError):
    """An unconditional internal bound failed; indicates a bug, not bad data."""


class InsufficientPrecisionError(SubshiftLabError):
    """Requested output precision exceeds the certified accuracy at this depth."""
