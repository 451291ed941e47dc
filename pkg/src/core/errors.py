"""Exception hierarchy.

Library code raises these; the command wrappers in middleware.py turn them into failed checks.
"""


class HeisError(Exception):
    """Base class for every error raised by this package."""


class DomainError(HeisError, ValueError):
    """Argument outside the domain of an operation."""


class SeamError(HeisError):
    """Finite difference requested at a point lying on a declared seam."""


class BracketError(HeisError):
    """Root bracket does not enclose the target."""


class FlowError(HeisError):
    """Characteristic integration failed (non-finite field value or blow-up in range)."""


class QuadratureError(HeisError):
    """Quadrature did not reach the requested tolerance."""


class RefusedEvaluation(HeisError):
    """Field cannot be used for the requested integral (singular partials)."""


class JacobianError(HeisError):
    """∂_τχ fell below the positivity floor."""
