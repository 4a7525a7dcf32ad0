"""Exception taxonomy shared across the package.

Every error a caller can provoke has its own class so the CLI can map it to an
exit code without string matching.  InternalConsistencyError is different: it
means a mathematically guaranteed invariant failed at runtime, i.e. a bug.
"""


class BratteliError(Exception):
    """Base class for all package-specific errors."""


class UnsupportedDegreeError(BratteliError):
    """Polynomial degree exceeds the configured factorization bound."""

    def __init__(self, degree: int, bound: int):
        self.degree = degree
        self.bound = bound
        super().__init__(
            f"polynomial degree {degree} exceeds the supported bound {bound}"
        )


class DiagramValidationError(BratteliError):
    """Input matrix fails the diagram shape conditions; message names the offender."""


class InfiniteMeasureError(BratteliError):
    """The requested class is not distinguished; its invariant measure is infinite."""


class InternalConsistencyError(BratteliError):
    """A guaranteed invariant failed at runtime -- a bug, not bad input."""


class EnumerationBudgetError(BratteliError):
    """Value enumeration would exceed the configured budget."""

    def __init__(self, product: int, budget: int):
        self.product = product
        self.budget = budget
        super().__init__(
            f"enumeration size {product} exceeds the budget {budget}"
        )


class FieldMismatchError(BratteliError):
    """A value was expressed over an incompatible number field."""


class UnsupportedOperationError(BratteliError):
    """The operation's preconditions exclude this input (documented, not a bug)."""


class SearchFailedError(BratteliError):
    """A bounded construction search exhausted its budgets without a witness."""

    def __init__(self, message: str, last_tried=None):
        self.last_tried = last_tried
        super().__init__(message)


class SizeLimitError(BratteliError):
    """A construction would produce a diagram above the configured size guard."""


class ValueExprError(BratteliError):
    """A CLI value expression failed to parse."""
