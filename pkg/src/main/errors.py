"""Exception hierarchy shared by every module of the engine."""


class LieHermError(Exception):
    """Base class for all engine errors."""


class DivisionByZero(LieHermError, ZeroDivisionError):
    pass


class NoSolution(LieHermError, ValueError):
    """Raised when a linear system is inconsistent."""


class InvalidRank(LieHermError, ValueError):
    pass


class DimensionMismatch(LieHermError, ValueError):
    pass


class DegenerateKilling(LieHermError, ValueError):
    """Raised when the Killing form of an algebra is singular."""


class ConstructionFailure(LieHermError, RuntimeError):
    """Raised when a builder cannot produce an object satisfying its invariants."""


class StructureError(LieHermError, RuntimeError):
    """Raised when an exact verification of a built object fails."""


class NotCartan(LieHermError, ValueError):
    pass


class InvalidParameter(LieHermError, ValueError):
    pass


class CoframeMismatch(LieHermError, ValueError):
    pass


class NotRealForm(LieHermError, ValueError):
    pass


class NotType11(LieHermError, ValueError):
    pass


class InvalidExponent(LieHermError, ValueError):
    pass


class NotPositiveDefinite(LieHermError, ValueError):
    pass


class NotAFrame(LieHermError, ValueError):
    pass


class NotRegularStructure(LieHermError, ValueError):
    pass


class DegreeMismatch(LieHermError, ValueError):
    pass


class DegenerateDenominator(LieHermError, ValueError):
    pass


class NoPositiveSolution(LieHermError, ValueError):
    """Raised when the astheno-Kähler equation forces c^2 <= 0."""

    def __init__(self, value):
        super().__init__(f"No positive solution: c^2 = {value}")
        self.value = value


class UnknownScenario(LieHermError, KeyError):
    pass


class BadParameter(LieHermError, ValueError):
    """Raised for malformed or unknown scenario parameters."""

    def __init__(self, key: str, message: str):
        super().__init__(f"Bad parameter '{key}': {message}")
        self.key = key
