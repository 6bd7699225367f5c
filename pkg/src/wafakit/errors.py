"""Shared exception types."""


class ToolkitError(Exception):
    """Base class for every error raised by this package."""


class CarrierMismatchError(ToolkitError):
    """Operands do not belong to the same semiring carrier."""


class CarrierError(ToolkitError):
    """The operation is not available over the given carrier."""


class ShapeError(ToolkitError):
    """Input violates a structural precondition (not nice, non-linear hom, ...)."""


class ResourceLimitError(ToolkitError):
    """A cap or step budget was exhausted before the computation finished."""


class ParseError(ToolkitError):
    """Malformed document, value text, or word."""


class VerificationError(ToolkitError):
    """A construction failed its post-hoc behavior check."""
