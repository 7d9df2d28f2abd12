"""Exception hierarchy shared by every module of the package."""


class CessError(Exception):
    """Base class for all errors raised by cess."""


class ModulusMismatch(CessError, ValueError):
    pass


class DivisionByZero(CessError, ZeroDivisionError):
    pass


class NotPrime(CessError, ValueError):
    pass


class DuplicateAbscissa(CessError, ValueError):
    pass


class IncompleteTail(CessError, ValueError):
    pass


class DuplicateAlpha(CessError, ValueError):
    pass


class ZeroAlpha(CessError, ValueError):
    pass


class DimensionMismatch(CessError, ValueError):
    pass


class SingularMatrix(CessError, ArithmeticError):
    pass


class SingularSystem(CessError, ArithmeticError):
    """A linear system has no unique solution because its matrix is rank deficient."""


class InconsistentSystem(CessError, ArithmeticError):
    pass


class IndexOutOfBounds(CessError, IndexError):
    pass


class InvalidParams(CessError, ValueError):
    pass


class InvalidD(InvalidParams):
    pass


class MissingMinimalD(InvalidParams):
    pass


class UnsupportedD(CessError, ValueError):
    pass


class FieldTooSmall(InvalidParams):
    pass


class InvalidBeta(InvalidParams):
    pass


class LengthMismatch(CessError, ValueError):
    pass


class DuplicateNode(CessError, ValueError):
    pass


class InconsistentShares(CessError, ValueError):
    pass


class NotAuthorized(CessError, ValueError):
    """Fewer than ``n - r`` nodes were offered for decoding."""


class TooManyErasures(CessError, ValueError):
    pass


class BudgetExceeded(CessError, RuntimeError):
    pass


class HeaderMismatch(CessError, ValueError):
    pass


class InputTooLarge(CessError, ValueError):
    pass


class ShareFormatError(CessError, ValueError):
    pass
