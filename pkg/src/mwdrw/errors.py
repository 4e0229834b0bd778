"""Exception hierarchy shared by every module of the package."""


class MWError(Exception):
    """Base class for all errors raised by :mod:`mwdrw`."""


class NotDivisible(MWError, ArithmeticError):
    pass


class PrecisionExhausted(MWError, ArithmeticError):
    pass


class VariableMismatch(MWError, ValueError):
    pass


class NonUnitSubstitution(MWError, ValueError):
    pass


class LengthUnderflow(MWError, ValueError):
    pass


class NotCongruentModP(MWError, ValueError):
    pass


class IdentityViolation(MWError):
    """An identity that holds by construction failed; always a bug."""

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload or {}


class IncompatibleLifts(MWError, ValueError):
    pass


class FunctorialityViolation(IdentityViolation):
    pass


class BoundViolation(MWError):
    pass


class WindowOverflow(MWError, ValueError):
    pass


class NotClosed(MWError, ValueError):
    pass


class JobParseError(MWError, ValueError):
    pass
