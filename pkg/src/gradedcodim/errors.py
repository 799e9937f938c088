"""Exception hierarchy shared by every module."""


class CodimError(Exception):
    """Base class for all errors raised by gradedcodim."""


class SchemaError(CodimError):
    pass


class GroupError(CodimError):
    pass


class AssociativityError(CodimError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class GradingError(CodimError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnitError(CodimError):
    pass


class DimensionError(CodimError):
    pass


class UnknownGroupElement(CodimError):
    pass


class BudgetExceeded(CodimError):
    pass


class InvariantViolation(CodimError):
    """An internal consistency check failed; always signals a bug."""


class NegativeMultiplicity(InvariantViolation):
    pass


class NegativeDelta(InvariantViolation):
    pass


class RankDisagreement(InvariantViolation):
    pass


class NotUnital(CodimError):
    pass


class InsufficientTruncation(CodimError):
    pass


class WindowTooShort(CodimError):
    pass


class DegenerateWindow(CodimError):
    pass
