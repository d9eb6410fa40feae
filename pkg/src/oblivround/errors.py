"""Exception hierarchy. Every error carries a stable ``code`` used as the CLI exit status."""


class ObliviousRoundingError(Exception):
    code = 1


class DomainError(ObliviousRoundingError, ValueError):
    """Argument outside the domain of a bound or schedule formula."""

    code = 10


class InstanceFormatError(ObliviousRoundingError):
    code = 3

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DimensionError(ObliviousRoundingError, ValueError):
    code = 4


class WidthViolationError(ObliviousRoundingError):
    """An oracle image coordinate fell outside ``[L, L + omega]``."""

    code = 5

    def __init__(self, coordinate, value, lower, upper):
        self.coordinate = coordinate
        self.value = value
        super().__init__(
            f"coordinate {coordinate} has value {value!r} outside the declared "
            f"range [{lower!r}, {upper!r}]"
        )


class PreconditionError(ObliviousRoundingError):
    code = 6


class NoConvergenceError(ObliviousRoundingError):
    """The iteration cap was hit. ``result`` holds the best-so-far solution."""

    code = 7

    def __init__(self, message, result=None):
        self.result = result
        super().__init__(message)


class UncoverableError(ObliviousRoundingError):
    code = 8

    def __init__(self, elements):
        self.elements = sorted(elements)
        super().__init__(f"elements not in any set: {self.elements}")


class OracleError(ObliviousRoundingError):
    code = 9
