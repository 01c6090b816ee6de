"""Exception types shared across the package."""


class S4LieError(Exception):
    """Base class for all package errors."""


class ContextError(S4LieError):
    """Scalars or objects from different field contexts were combined."""


class ShapeError(S4LieError):
    """Dimension mismatch in a linear-algebra or algebra operation."""


class ParseError(S4LieError):
    """Malformed scalar text or JSON payload."""


class InvolutionError(S4LieError):
    """Supplied involution matrix fails its laws, or is missing."""


class FormError(S4LieError):
    """Supplied bilinear form fails its laws, or is missing."""


class AxiomError(S4LieError):
    """A construction precondition (axiom system) failed."""


class ConstructionError(S4LieError):
    """A build step produced data outside its advertised shape."""


class GradingError(S4LieError):
    """A bracket entry violates the declared grading."""


class ActionError(S4LieError):
    """Group generators fail the automorphism law or group relations."""


class ContainmentError(S4LieError):
    """A computed element falls outside the subspace it must lie in."""


class SolveError(S4LieError):
    """A linear solve was inconsistent or underdetermined."""
