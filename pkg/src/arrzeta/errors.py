"""Exception types shared across the package."""


class ArrZetaError(Exception):
    """Base class for all library errors."""


class InvalidInputError(ArrZetaError):
    """Malformed arrangement, expression, certificate, or request."""


class UnsupportedError(ArrZetaError):
    """Operation outside the implemented range (e.g. closed-form zeta above rank 3)."""


class PoleError(ArrZetaError):
    """Evaluation at a pole, or a coefficient request where the pole has order >= 2."""


class RouteHypothesisError(ArrZetaError):
    """The high-multiplicity-point certification route was invoked on a witness
    that fails its combinatorial hypotheses (distinct from a negative answer)."""


class InternalCheckError(ArrZetaError):
    """A combinatorial argument and its exact linear-algebra oracle disagree.
    This always indicates a bug, never a mathematical ambiguity."""
