"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

The backend is chosen at import time from the PATCHNOISE_BACKEND environment
variable: "numba", "numpy", or "auto" (default; numba when importable).
Both paths perform the same arithmetic in the same order, element by
element, so their outputs are bit-identical; the numba path only removes
interpreter overhead.  Keep it that way: reproducibility tests compare the
two backends for exact equality.

``benchmarks/kernel_benchmark.py`` times the two paths side by side.
"""

from __future__ import annotations

import os

import numpy as np

ENV_VAR = "PATCHNOISE_BACKEND"
_VALID = ("auto", "numba", "numpy")


def _resolve_backend() -> str:
    requested = os.environ.get(ENV_VAR, "auto").strip().lower()
    if requested not in _VALID:
        raise ValueError(f"{ENV_VAR} must be one of {_VALID}, got {requested!r}")
    if requested == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        if requested == "numba":
            raise ImportError(f"{ENV_VAR}=numba but numba is not importable") from None
        return "numpy"
    return "numba"


_BACKEND = _resolve_backend()


def active_backend() -> str:
    """Name of the kernel backend in use: "numba" or "numpy"."""
    return _BACKEND


# -- pure-numpy implementations ---------------------------------------------
# The fluctuator loop stays in Python so each fluctuator is accumulated in
# the same fixed order as in the jitted kernels.

def lorentzian_mixture_psd_numpy(tau, amp_sq, omega):
    out = np.zeros_like(omega)
    for i in range(tau.shape[0]):
        num = 4.0 * amp_sq[i] * tau[i]
        wt = omega * tau[i]
        out += num / (1.0 + wt * wt)
    return out


def telegraph_accumulate_numpy(out, grid, flip_times, amplitude, initial_state):
    idx = np.searchsorted(flip_times, grid, side="right")
    out += np.where(idx % 2 == 0, amplitude * initial_state, -amplitude * initial_state)


if _BACKEND == "numba":
    from numba import njit

    @njit(cache=True)
    def _lorentzian_mixture_psd_jit(tau, amp_sq, omega):  # pragma: no cover
        out = np.zeros_like(omega)
        nf = omega.shape[0]
        for i in range(tau.shape[0]):
            num = 4.0 * amp_sq[i] * tau[i]
            for j in range(nf):
                wt = omega[j] * tau[i]
                out[j] += num / (1.0 + wt * wt)
        return out

    @njit(cache=True)
    def _telegraph_accumulate_jit(out, grid, flip_times, amplitude, initial_state):  # pragma: no cover
        k = 0
        m = flip_times.shape[0]
        for j in range(grid.shape[0]):
            while k < m and flip_times[k] <= grid[j]:
                k += 1
            if k % 2 == 0:
                out[j] += amplitude * initial_state
            else:
                out[j] += -amplitude * initial_state

    def lorentzian_mixture_psd_numba(tau, amp_sq, omega):
        return _lorentzian_mixture_psd_jit(tau, amp_sq, omega)

    def telegraph_accumulate_numba(out, grid, flip_times, amplitude, initial_state):
        _telegraph_accumulate_jit(out, grid, flip_times, amplitude, initial_state)

    lorentzian_mixture_psd = lorentzian_mixture_psd_numba
    telegraph_accumulate = telegraph_accumulate_numba
else:
    lorentzian_mixture_psd = lorentzian_mixture_psd_numpy
    telegraph_accumulate = telegraph_accumulate_numpy


lorentzian_mixture_psd.__doc__ = """Summed one-sided Lorentzian PSD of a fluctuator population.

S(omega_j) = sum_i 4 amp_sq_i tau_i / (1 + (omega_j tau_i)^2), accumulated
fluctuator by fluctuator in index order (deterministic reduction).
"""

telegraph_accumulate.__doc__ = """Add one telegraph fluctuator, sampled on a time grid, into ``out``.

The state at grid time t is initial_state * (-1)^(number of flip_times <= t),
scaled by ``amplitude``.  flip_times must be sorted ascending.
"""
