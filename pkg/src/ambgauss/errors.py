"""Exception hierarchy shared by all modules."""


class DivisionByZero(ZeroDivisionError):
    pass


class WitnessViolation(ArithmeticError):
    """An apartness witness turned out false: |x| >= 2^-k does not hold."""


class DomainViolation(ValueError):
    """A real outside [-1, 1] was handed to the signed-digit translation."""


class FuelExhausted(RuntimeError):
    """A partial computation ran out of its step allowance."""


class AllTasksExhausted(FuelExhausted):
    """Every task in a race exhausted its fuel without completing."""


class Cancelled(Exception):
    """Raised inside a race task once the race has been decided."""


class DimensionMismatch(ValueError):
    pass


class SingularMatrix(ArithmeticError):
    pass


class ParseError(ValueError):
    pass
