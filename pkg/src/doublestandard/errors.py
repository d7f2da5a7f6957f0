"""Exception hierarchy.  Every error raised for a mathematical/domain reason
derives from :class:`DomainError`; the CLI maps those to exit code 1."""


class DomainError(Exception):
    pass


class ResidualTooLarge(DomainError):
    """A semiconjugacy value is not close to any k/(2^p - 1)."""


class NoConvergence(DomainError):
    pass


class WrongPeriod(DomainError):
    pass


class DegenerateB(DomainError):
    """b = 0: the critical points collapse onto 0 and infinity."""


class InconsistentData(DomainError):
    pass


class MapOverflow(DomainError, ArithmeticError):
    pass


class OutOfRange(DomainError, ValueError):
    pass


class DomainEscape(DomainError):
    """An orbit left the linearization disk."""


class AtBasePoint(DomainError):
    pass


class CriticalOnOrbit(DomainError):
    pass


class BisectionFailure(DomainError):
    pass


class PathBroken(DomainError):
    def __init__(self, message, b=None):
        super().__init__(message)
        self.b = b


class InsufficientData(DomainError):
    pass


class TypeMismatch(DomainError, ValueError):
    """A precondition on the tongue type of a parameter does not hold."""
