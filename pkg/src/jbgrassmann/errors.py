"""Exception hierarchy.

Two families matter to callers: :class:`ValidationError` (malformed or
out-of-tolerance input) and :class:`PreconditionError` (well-formed input that
violates a mathematical hypothesis, e.g. a pair outside the normal
neighbourhood).  The command line maps them to exit codes 1 and 2.
"""


class JBTripleError(ValueError):
    """Base class for all errors raised by this package."""


class ValidationError(JBTripleError):
    """Input failed a structural or tolerance check."""


class DimensionError(ValidationError):
    """Matrices with incompatible shapes were combined."""


class NotTripotentError(ValidationError):
    pass


class NotProjectionError(ValidationError):
    pass


class NotTangentError(ValidationError):
    pass


class SchemaError(ValidationError):
    """A matrix or path file does not follow the expected schema."""


class PreconditionError(JBTripleError):
    """A mathematical precondition of an operation does not hold."""


class NotInNormalNeighbourhoodError(PreconditionError):
    pass


class DomainError(PreconditionError):
    """Tangent vector outside the injectivity domain of the exponential."""
