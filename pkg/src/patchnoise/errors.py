"""Exception hierarchy.

Input problems (bad files, out-of-range arguments, degenerate data) derive
from InputError; numerical failures (non-convergence, rank deficiency,
quadrature breakdown) derive from NumericalError.  The CLI maps these to
exit codes 2 and 3 respectively.
"""

from __future__ import annotations


class PatchNoiseError(Exception):
    """Base class for all package errors."""


class InputError(PatchNoiseError, ValueError):
    """Invalid input data, configuration, or argument."""


class DegenerateThermometryError(InputError):
    """Sideband probabilities outside the validity range (P_bsb <= P_rsb)."""


class InsufficientDataError(InputError):
    """Too few valid points for the requested operation."""


class ResourceLimitError(InputError):
    """Requested computation exceeds a configured memory/size cap."""


class NumericalError(PatchNoiseError, RuntimeError):
    """A numerical procedure failed to produce a trustworthy result."""


class QuadratureError(NumericalError):
    """Adaptive quadrature did not converge; message carries diagnostics."""


class RankDeficiencyError(NumericalError):
    """Fit parameters are not identifiable from the supplied data."""


class FitConvergenceError(NumericalError):
    """Fit did not converge within the iteration budget.

    Carries the best parameters seen so far for diagnostics.
    """

    def __init__(self, message: str, best_params=None, iterations: int = 0):
        super().__init__(message)
        self.best_params = best_params
        self.iterations = iterations
