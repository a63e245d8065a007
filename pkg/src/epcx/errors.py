"""Exception hierarchy shared by every epcx module."""


class EpcxError(Exception):
    """Base class for all library errors."""


class SingularElement(EpcxError, ZeroDivisionError):
    """Raised when inverting an element whose quadratic form vanishes."""


class NotElliptic(EpcxError, ValueError):
    """Raised by operations that need 4*alpha - beta**2 > 0."""


class Lemma1Inadmissible(EpcxError, ValueError):
    """Raised when alpha*beta**2 - 4*alpha**2 == 0."""


class AlphaZero(EpcxError, ValueError):
    pass


class ParamsMismatch(EpcxError, ValueError):
    pass


class GridTooSmall(EpcxError, ValueError):
    pass


class ZetaOnContour(EpcxError, ValueError):
    pass


class SolveFailure(EpcxError, ArithmeticError):
    pass


class CflViolation(EpcxError, ValueError):
    pass


class NonFiniteState(EpcxError, FloatingPointError):
    pass


class NotAssociated(EpcxError, ValueError):
    """Raised when B or F is nonzero where an associated operator is required."""


class DegreeOverflow(EpcxError, OverflowError):
    pass


class ConfigInvalid(EpcxError, ValueError):
    pass


class CheckFailed(EpcxError):
    pass
