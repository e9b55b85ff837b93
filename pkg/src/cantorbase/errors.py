"""Exception types shared across the package."""


class CantorBaseError(Exception):
    pass


class ParseError(CantorBaseError, ValueError):
    """Text does not conform to the number, word or base grammar."""


class MixedFieldError(CantorBaseError, ArithmeticError):
    """Operands live in different quadratic fields."""


class NegativeInput(CantorBaseError, ValueError):
    pass


class XOutOfRange(CantorBaseError, ValueError):
    pass


class EntryNotGreaterThanOne(CantorBaseError, ValueError):
    pass


class NotAlternateBase(CantorBaseError, ValueError):
    pass


class UnknownQuasiGreedy(CantorBaseError):
    """A quasi-greedy expansion needed by a decision procedure was not
    resolved within the step budget."""


class NotARepresentationOf1(CantorBaseError, ValueError):
    pass


class SumNotGreaterThanOne(CantorBaseError, ValueError):
    pass


class TailInequalityViolated(CantorBaseError, ValueError):
    pass


class ZeroPeriod(CantorBaseError, ValueError):
    pass


class UnsupportedFormat(CantorBaseError, ValueError):
    pass


class BudgetExceeded(CantorBaseError, RuntimeError):
    """An iteration limit was hit before a result could be certified."""
