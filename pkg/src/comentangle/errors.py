"""Exception types raised across the package."""


class ComEntangleError(Exception):
    """Base class for all package errors."""


class NonSquare(ComEntangleError, ValueError):
    pass


class NonHermitianInput(ComEntangleError, ValueError):
    pass


class DimensionMismatch(ComEntangleError, ValueError):
    pass


class InvalidParameter(ComEntangleError, ValueError):
    pass


class UnknownScenario(ComEntangleError, ValueError):
    pass


class InvalidDensityMatrix(ComEntangleError, ValueError):
    pass


class NotXState(ComEntangleError, ValueError):
    pass


class OutOfDomain(ComEntangleError, ValueError):
    pass


class DomainViolation(ComEntangleError, ValueError):
    """Oscillation window leaves the valid arcsine domain.

    ``plate`` is set (1 or 2) when the violation is attributed to a specific
    plate of a two-plate factor.
    """

    def __init__(self, message, plate=None):
        if plate is not None:
            message = f"plate {plate}: {message}"
        super().__init__(message)
        self.plate = plate


class InvalidRange(ComEntangleError, ValueError):
    pass
