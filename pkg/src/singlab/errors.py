"""Exception hierarchy shared by every singlab module."""


class SinglabError(Exception):
    """Base class; ``code`` is the machine-readable tag used in CLI reports."""

    code = "ERROR"


class RingMismatchError(SinglabError, ValueError):
    code = "RING_MISMATCH"


class OrderError(SinglabError, ValueError):
    """A global-order routine received a local order, or vice versa."""

    code = "WRONG_ORDER"


class ParseError(SinglabError, ValueError):
    code = "SYNTAX_ERROR"

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class SupportNotFiniteError(SinglabError):
    code = "SUPPORT_NOT_FINITE"


class StabilizationNotReachedError(SinglabError):
    code = "STABILIZATION_NOT_REACHED"


class LiftFailedError(SinglabError):
    code = "LIFT_FAILED"


class NotSLinearError(SinglabError, ValueError):
    code = "ENDOMORPHISM_NOT_S_LINEAR"


class NotQuasiHomogeneousError(SinglabError, ValueError):
    code = "NOT_QUASI_HOMOGENEOUS"


class NonIntegralResultError(SinglabError, ValueError):
    code = "NON_INTEGRAL_RESULT"


class InvariantViolation(SinglabError, ValueError):
    code = "INVARIANT_VIOLATION"
