"""Exceptions raised across pathpack."""


class PathpackError(Exception):
    pass


class InvalidInstance(PathpackError, ValueError):
    """Malformed network, request, job or resource."""


class PreconditionError(PathpackError, ValueError):
    """An algorithm was called outside its domain (wrong demand size, capacities...)."""


class NBAViolation(PreconditionError):
    """Some demand exceeds the smallest edge capacity."""

    def __init__(self, d_max, c_min):
        self.d_max = d_max
        self.c_min = c_min
        super().__init__(
            f"no-bottleneck assumption violated: max demand {d_max} > min capacity {c_min}"
        )


class PartialColoringError(PathpackError, ValueError):
    """A coloring does not assign a color to every request."""


class UncoverableError(PathpackError, ValueError):
    """Some edge carries demand but no resource can cover it."""


class BudgetExceeded(PathpackError, RuntimeError):
    """An exact oracle ran out of its size, node or time budget."""
