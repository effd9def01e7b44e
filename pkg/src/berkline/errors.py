"""Exception hierarchy shared by every berkline module.

Each exception carries a short machine-readable ``code`` so the command
line front end can emit structured errors without string matching.
"""

from __future__ import annotations


class BerklineError(Exception):
    """Base class for all library errors."""

    code = "error"

    def __init__(self, message: str, location: str | None = None):
        super().__init__(message)
        self.message = message
        self.location = location


class DomainError(BerklineError):
    """An argument is outside the mathematical domain of the operation."""

    code = "domain"


class FieldMismatch(BerklineError):
    """Two operands belong to different valued fields."""

    code = "field-mismatch"


class Unsupported(BerklineError):
    """The field backend does not support the requested operation."""

    code = "unsupported"


class NotCollapsible(BerklineError):
    """A generalized segment cannot be collapsed to a single interval."""

    code = "not-collapsible"


class PoleError(BerklineError):
    """A rational function was evaluated at one of its poles."""

    code = "pole"


class IndeterminateError(BerklineError):
    """Numerator and denominator both vanish at the evaluation point."""

    code = "indeterminate"


class MalformedTree(BerklineError):
    """A subtree violates its structural invariants for the operation."""

    code = "malformed-tree"


class FormulaTooLarge(BerklineError):
    """Disjunctive normalization exceeded the configured atom budget."""

    code = "formula-too-large"


class UnbalancedDivisor(BerklineError):
    """Zero and pole multiplicities do not cancel."""

    code = "unbalanced-divisor"
