"""Exception hierarchy shared by all tpds modules.

Two families matter to callers (and to the CLI exit-code mapping):

* plain :class:`TpdsError` subclasses signal bad input or a failed
  computation on valid input (exit code 1);
* :class:`PropertyFailure` subclasses signal that a structural property the
  theory guarantees did not hold numerically -- e.g. a spectrum that should
  be real and simple is not (exit code 2).  These usually mean the input is
  outside the class the analysis applies to, or accuracy was insufficient.
"""

from __future__ import annotations


class TpdsError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(TpdsError):
    """Empty or inconsistently sized vector/matrix input."""


class PreconditionError(TpdsError):
    """An operation's stated precondition is violated."""


class ConvergenceError(TpdsError):
    """Iteration budget exhausted; carries the best iterate found."""

    def __init__(self, message, best=None, residual=None):
        super().__init__(message)
        self.best = best
        self.residual = residual


class DivergenceError(TpdsError):
    """A trajectory or iteration grew beyond the divergence bound."""


class DomainExitError(TpdsError):
    """A trajectory left the model's state space beyond the tolerance band."""

    def __init__(self, message, t_exit=None, state=None):
        super().__init__(message)
        self.t_exit = t_exit
        self.state = state


class StiffnessError(TpdsError):
    """Adaptive step size underflowed; the problem looks stiff."""


class PropertyFailure(TpdsError):
    """A theory-guaranteed structural property failed numerically."""


class SpectralError(PropertyFailure):
    """Eigen-decomposition violated a required structural property."""


class SpectrumNotRealError(SpectralError):
    """A complex eigenvalue pair survived; the input is not oscillatory."""


class SimplicityError(SpectralError):
    """An eigenvalue gap fell below the simplicity tolerance."""


class MonodromyError(PropertyFailure):
    """Monodromy matrix is inconsistent with total positivity."""


class PropertyViolationError(PropertyFailure):
    """A monitored invariant (e.g. sign-variation monotonicity) failed."""

    def __init__(self, message, samples=None):
        super().__init__(message)
        self.samples = samples
