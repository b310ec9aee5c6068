"""
Error hierarchy for the toolkit.

Every error derives from LceToolkitError and from the closest builtin, so
callers can catch either. The CLI maps them onto exit codes.
"""


class LceToolkitError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 2


class BadParams(LceToolkitError, ValueError):
    """Parameters outside the supported range (k > n, negative sizes, ...)."""


class CompositeModulus(BadParams):
    """The requested field size is not prime."""


class DivisionByZero(LceToolkitError, ZeroDivisionError):
    """Inversion of zero in a prime field."""


class NonSquare(LceToolkitError, ValueError):
    """Determinant requested for a non-square matrix."""


class BadIndex(LceToolkitError, IndexError):
    """Index or subset out of range."""


class RankDeficient(LceToolkitError, ValueError):
    """Generator matrix does not have full row rank."""


class DimensionMismatch(LceToolkitError, ValueError):
    """Operand shapes or lengths do not agree."""


class MultisetMismatch(LceToolkitError, ValueError):
    """Pair invariant whose index multisets differ."""


class SamplingExhausted(LceToolkitError, RuntimeError):
    """No usable random point found within the trial budget."""


class UndefinedInvariant(LceToolkitError, ValueError):
    """An invariant has a zero denominator at the given point."""


class NoUsableInvariant(LceToolkitError, ValueError):
    """No invariant is defined on both codes of an instance."""


class NotExpanded(LceToolkitError, TypeError):
    """Polynomial operation requested on a lazy equation."""


class ExpansionRefused(LceToolkitError, RuntimeError):
    """Symbolic expansion would exceed the configured term bound."""

    exit_code = 3

    def __init__(self, predicted: int, bound: int):
        self.predicted = predicted
        self.bound = bound
        super().__init__(
            f"Predicted {predicted} terms exceeds the bound of {bound}; "
            f"rerun with --lazy to evaluate equations without expansion"
        )


class SearchSpaceTooLarge(LceToolkitError, RuntimeError):
    """Exhaustive search over S_n refused for large n."""

    exit_code = 3


class InstanceValidationError(LceToolkitError, ValueError):
    """Instance or model file failed validation."""
