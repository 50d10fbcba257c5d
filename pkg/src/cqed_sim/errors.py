"""Exception types raised by the simulator."""


class CQEDError(Exception):
    """Base class for all errors raised by cqed_sim."""


class ParameterError(CQEDError, ValueError):
    pass


class DimensionOverflow(CQEDError, MemoryError):
    pass


class DimensionMismatch(CQEDError, ValueError):
    pass


class DivisionDomain(CQEDError, ZeroDivisionError):
    """A closed-form expression was evaluated where its denominator vanishes."""


class PoleDomain(CQEDError, ValueError):
    """Gain exceeds loss: no physical steady state on this branch."""


class NoPhysicalRoot(CQEDError, ValueError):
    pass


class NonConvergence(CQEDError, RuntimeError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DegenerateNullSpace(CQEDError, RuntimeError):
    pass


class StepFailure(CQEDError, RuntimeError):
    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class SweepSpecError(CQEDError, ValueError):
    pass
