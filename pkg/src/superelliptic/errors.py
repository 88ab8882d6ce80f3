"""Exceptions shared across the library.

The CLI maps these onto its exit codes; library callers can catch them
individually.
"""


class DomainError(ValueError):
    """Operands belong to different field domains, or the domain is unsupported."""


class ModelError(ValueError):
    """The curve model is degenerate: reducible, bad branch multiplicities,
    or an unsupported characteristic."""


class PrecisionError(ArithmeticError):
    """A series became indistinguishable from zero at the working precision.

    Callers should retry with a higher precision (the valuation is
    undecidable at the current one)."""


class RootExtractionError(ArithmeticError):
    """A leading coefficient has no n-th root in the base field."""


class NeedsFieldExtension(ValueError):
    """A required coordinate lives outside the current base field; the caller
    must base-change first."""

    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree


class UnsupportedOverRationals(ValueError):
    """The exact computation would require a number field, which the element
    types do not represent.  Work over a finite field instead."""


class BadReductionError(ValueError):
    """The prime does not give good reduction for this curve."""


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured budget."""


class CrossCheckError(RuntimeError):
    """Two independent methods disagreed; this is always a bug, never broken
    arbitrarily."""


class InternalError(RuntimeError):
    """An invariant that cannot fail for supported inputs failed anyway."""
