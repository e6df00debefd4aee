"""Exception hierarchy shared by every module."""


class StrataChowError(Exception):
    """Base class for all errors raised by the package."""


class InputError(StrataChowError):
    """Malformed user input (maps to CLI exit status 2)."""


class UnknownVariable(InputError):
    pass


class ParseError(InputError):
    """Syntax error in an expression or file, with a character/line position."""

    def __init__(self, message, position=None, line=None, source=None):
        self.position = position
        self.line = line
        self.source = source
        where = []
        if source is not None:
            where.append(str(source))
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"col {position}")
        prefix = ":".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


# The grammar-level error keeps the conventional name as an alias.
SyntaxError = ParseError  # noqa: A001


class ZeroDenominator(InputError):
    pass


class DegreeMismatch(StrataChowError):
    pass


class RingMismatch(StrataChowError):
    pass


class HomogeneityViolation(DegreeMismatch):
    pass


class DegreeCapExceeded(StrataChowError):
    pass


class NotDivisible(StrataChowError):
    pass


class InexactDivision(StrataChowError):
    pass


class SymmetryReductionFailed(StrataChowError):
    pass


class ParameterOutOfRange(InputError):
    pass


class UnknownIdentity(InputError):
    pass


class UnknownEntry(InputError):
    pass


class UnknownScenario(InputError):
    pass


class GluingConditionFailed(StrataChowError):
    pass


class LiftingFailed(StrataChowError):
    pass
