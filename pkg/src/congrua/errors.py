"""Exception hierarchy shared by every module."""


class CongruaError(Exception):
    """Base class for all library errors."""


class FieldMismatch(CongruaError, ValueError):
    pass


class DivisionByZero(CongruaError, ZeroDivisionError):
    pass


class DimensionMismatch(CongruaError, ValueError):
    pass


class AmbientMismatch(DimensionMismatch):
    pass


class Singular(CongruaError, ValueError):
    pass


class SingularPivot(Singular):
    pass


class NotSymmetric(CongruaError, ValueError):
    pass


class NotCommutative(CongruaError, ValueError):
    pass


class ParseError(CongruaError, ValueError):
    """Malformed scalar text or problem file; ``where`` locates the fault."""

    def __init__(self, message, where=None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)
