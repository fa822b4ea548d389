"""Exception hierarchy shared by every layer of the package."""


class SummerError(Exception):
    """Base class for all domain errors."""


class ZeroSeries(SummerError):
    pass


class PrecisionLoss(SummerError):
    pass


class NotInvertibleOrder(SummerError):
    pass


class SingularCurve(SummerError):
    pass


class PointNotOnCurve(SummerError):
    pass


class TorsionPoint(SummerError):
    """Raised when n*s = O for some n within the search bound."""

    def __init__(self, order):
        super().__init__(f"point is torsion of order {order}")
        self.order = order


class NotRationalPoint(SummerError):
    """A zero, pole or point needed by the computation is not defined over the base field."""


class DivisionByZero(SummerError, ZeroDivisionError):
    pass


class ZeroFunction(SummerError):
    pass


class NotAUniformizer(SummerError):
    pass


class NotPrincipal(SummerError):
    pass


class EmptySpace(SummerError):
    pass


class ConstructionFailure(SummerError):
    """A post-hoc verification of a constructed object failed (indicates a bug)."""


class CrossCheckFailure(SummerError):
    """Two independent computations of the same quantity disagree."""


class WrongCharacteristic(SummerError):
    pass


class ParseError(SummerError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column
