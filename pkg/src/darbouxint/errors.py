"""Exception hierarchy shared by all modules."""


class DarbouxError(Exception):
    """Base class for every error raised by this package."""


class ZeroInversion(DarbouxError, ZeroDivisionError):
    pass


class DivisionByZero(DarbouxError, ZeroDivisionError):
    pass


class FieldMismatch(DarbouxError, ValueError):
    pass


class NotDivisible(DarbouxError, ArithmeticError):
    pass


class BothZero(DarbouxError, ValueError):
    pass


class BadIndex(DarbouxError, IndexError):
    pass


class ConstantInput(DarbouxError, ValueError):
    pass


class BadArguments(DarbouxError, ValueError):
    pass


class ArityTooLarge(DarbouxError, ValueError):
    pass


class NonPolynomialCoefficient(DarbouxError, ValueError):
    pass


class DimensionMismatch(DarbouxError, ValueError):
    pass


class MixedGrades(DarbouxError, ValueError):
    pass


# pipeline outcomes

class ZeroDifferential(DarbouxError):
    """dF = 0, so F is a p-th power and cannot be an irreducible invariant."""


class NotInvariant(DarbouxError):
    pass


class ZeroVector(DarbouxError, ValueError):
    pass


class ExpandedToZero(DarbouxError):
    """A nonzero coefficient vector produced a vanishing logarithmic form.

    This would contradict injectivity of the logarithmic map, so it is
    never swallowed.
    """


class NoDependence(DarbouxError):
    pass


class NoConstantDependence(DarbouxError):
    pass


class IdenticalPolarSupport(DarbouxError):
    pass


class DegenerateRatio(DarbouxError):
    pass


class NotTangent(DarbouxError):
    pass


class BudgetExceeded(DarbouxError):
    pass


# parsing

class ExprSyntaxError(DarbouxError, ValueError):
    def __init__(self, message, pos=None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class UnknownVariable(DarbouxError, ValueError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown variable {name!r}")


class NotGradeOne(DarbouxError, ValueError):
    pass
