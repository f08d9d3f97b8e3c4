"""Exception types raised for malformed input.

Mathematical non-realizability (bad parity, sum mismatch, degree bounds) is
never an exception; it is reported as a ``NotRealizable`` verdict.
"""


class DegSeqError(ValueError):
    """Base class for every error raised by this package."""


class NotNonincreasing(DegSeqError):
    def __init__(self, values, position=None):
        self.values = tuple(values)
        self.position = position
        where = f" (ascent at index {position})" if position is not None else ""
        super().__init__(f"sequence {list(self.values)} is not nonincreasing{where}")


class LengthMismatch(DegSeqError):
    pass


class EmptySequence(DegSeqError):
    pass


class NegativeEntry(DegSeqError):
    pass


class PreconditionFailed(DegSeqError):
    pass


class UnsupportedClass(DegSeqError):
    pass


class MaskInvalid(DegSeqError):
    pass


class InvalidR(DegSeqError):
    pass


class ConjugateFormUnavailable(DegSeqError):
    pass


class BudgetExceeded(DegSeqError):
    pass
