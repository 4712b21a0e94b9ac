"""Exception types shared across the package."""


class DomainError(ValueError):
    """An evaluation point lies outside the function's domain."""


class ConfigError(ValueError):
    """An experiment configuration is invalid or unparsable."""


class ContainmentError(RuntimeError):
    """Smooth-envelope containment could not be certified.

    Carries the offending grid point in ``point`` and the measured relative
    deviation in ``deviation``.
    """

    def __init__(self, message: str, point: float, deviation: float):
        super().__init__(message)
        self.point = point
        self.deviation = deviation


class SearchFailure(RuntimeError):
    """Certificate search ran out of admissible candidate points.

    ``level`` is the failing level, ``needed``/``found`` count alternation
    points.  Usually signals that the target sequence was not materialized
    deeply enough.
    """

    def __init__(self, level: int, needed: int, found: int, message: str):
        super().__init__(message)
        self.level = level
        self.needed = needed
        self.found = found
