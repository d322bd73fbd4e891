"""Exception types shared across the library."""


class LosError(Exception):
    """Base class for all losnet errors."""


class ValidationError(LosError):
    """An input violates a documented precondition (bad parameters,
    malformed file, duplicate coordinates, ...)."""


class UnknownCoordinateError(ValidationError):
    """A coordinate tuple does not name a vertex of the instance."""


class CapacityError(LosError):
    """A hard enumeration or size budget was exceeded.

    Budgets are enforced as errors, never as silent truncation: an exact
    solver or oracle that degrades quietly is worse than none.
    """
