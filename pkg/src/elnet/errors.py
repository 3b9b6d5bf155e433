"""Exception hierarchy shared by every module."""


class ElnetError(Exception):
    """Base class; the CLI maps subclasses onto exit codes."""


class InputError(ElnetError):
    """Bad user input (exit code 2)."""


class AlgorithmError(ElnetError):
    """A computation reached a mathematically invalid state (exit code 1)."""


class DimensionMismatch(InputError, ValueError):
    pass


class ParseError(InputError, ValueError):
    pass


class ValidationError(InputError, ValueError):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class NegativeParameter(InputError, ValueError):
    pass


class NonPositiveParameter(InputError, ValueError):
    pass


class EvenSize(InputError, ValueError):
    pass


class UnknownName(InputError, KeyError):
    pass


class UnsupportedType(InputError, ValueError):
    pass


class UnsupportedMatrix(InputError, ValueError):
    pass


class MoveNotApplicable(InputError, ValueError):
    pass


class SingularInterior(AlgorithmError, ZeroDivisionError):
    pass


class SingularDenominator(AlgorithmError, ZeroDivisionError):
    pass


class NotNilpotent(AlgorithmError):
    pass


class NotInTopCell(AlgorithmError):
    pass


class ResidueNotIdentity(AlgorithmError):
    pass


class ClosureBudgetExceeded(AlgorithmError):
    pass
