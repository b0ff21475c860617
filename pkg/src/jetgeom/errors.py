"""Shared exception types."""


class JetError(Exception):
    """Base class for all library errors."""


class DimensionMismatchError(JetError):
    """Operands live in different workspaces (variable count or degree cap)."""


class SingularJetError(JetError):
    """A reciprocal or matrix inverse hit a vanishing constant term."""


class ConstantTermError(JetError):
    """An operation required a specific constant term (e.g. exp needs 0)."""


class NotClosedError(JetError):
    """A Poincare-lemma primitive was handed a non-closed form."""


class RejectionError(JetError):
    """A builder precondition failed; carries a machine-readable reason."""

    def __init__(self, reason: str, message: str | None = None):
        super().__init__(message or reason)
        self.reason = reason


class StabilizationError(JetError):
    """Picard iterates kept changing where they must be stationary: the
    right-hand side consumed an x1-derivative of an unknown."""


class EvaluationError(JetError):
    """A right-hand-side evaluator raised during a solve."""
