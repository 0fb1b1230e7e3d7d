"""Exception types shared across the package."""


class InvalidInput(ValueError):
    """An argument violates a documented precondition."""


class NoSolution(Exception):
    """A search exhausted its range without finding an admissible object.

    ``constraint`` names the first constraint violated by the candidate
    that came closest to admissibility.
    """

    def __init__(self, message, constraint=None):
        super().__init__(message)
        self.constraint = constraint


class ResourceLimit(Exception):
    """The request is outside the range this desk-scale library handles."""
