"""Exception types shared across the library."""


class DeginvError(Exception):
    """Base class for every error this library raises on purpose."""


class DomainError(DeginvError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class AccuracyError(DeginvError, ArithmeticError):
    """A requested absolute-error bound cannot be certified within the summation cap."""


class VanishingError(DeginvError, ArithmeticError):
    """A quantity is indistinguishable from zero, so its logarithm is undefined."""


class NonTerminationError(DeginvError, RuntimeError):
    """An iteration cap was hit; unreachable for valid input, kept as a guard."""


class FitError(DeginvError, ValueError):
    """An extrapolation fit is underdetermined or singular."""
