"""Exception types shared across the package."""


class SecrouteError(Exception):
    """Base class for all secroute errors."""


class InvalidParameterError(SecrouteError, ValueError):
    """A parameter is outside its valid range."""


class GeometryError(SecrouteError, ValueError):
    """Degenerate geometry: coincident nodes, zero distances, etc."""


class InfeasibleError(SecrouteError):
    """The requested secrecy level cannot be met with finite power."""


class UnreachableError(SecrouteError):
    """No path exists between the requested endpoints."""


class BlockExhaustedError(SecrouteError):
    """All linearly independent coded messages of a block have been sent."""


class DegenerateInstanceError(SecrouteError):
    """Network generation could not produce a usable instance."""
