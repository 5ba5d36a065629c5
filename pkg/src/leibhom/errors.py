"""Exception types raised across the package."""


class LeibhomError(Exception):
    pass


class IndexOutOfBlock(LeibhomError, ValueError):
    """Axis pair does not fit the p/q block layout of the requested generator."""


class DimensionMismatch(LeibhomError, ValueError):
    pass


class NotAnIdeal(LeibhomError):
    pass


class QuotientMismatch(LeibhomError):
    pass


class IncompatibleModule(LeibhomError, ValueError):
    pass


class DomainMismatch(LeibhomError, ValueError):
    pass


class FieldMismatch(LeibhomError, ValueError):
    pass


class ProbabilisticDisagreement(LeibhomError):
    """Ranks computed modulo different primes disagree."""


class NotACocycle(LeibhomError, ValueError):
    pass


class LiftFailure(LeibhomError):
    """Snake-lemma lift left the subcomplex; indicates a bug, never bad input."""


class ParameterOutOfRange(LeibhomError, ValueError):
    pass


class CoefficientMismatch(LeibhomError, ValueError):
    pass


class DegreeMismatch(LeibhomError, ValueError):
    pass
