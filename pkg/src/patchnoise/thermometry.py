"""Sideband thermometry and the heating-rate to field-noise conversion chain.

The chain is: red/blue sideband transition probabilities -> mean phonon
number n -> heating rate ndot (weighted straight-line slope of n against
delay) -> one-sided electric-field spectral density

    S_E(f) = 4 m hbar (2 pi f) ndot / q^2

All functions are pure; probabilities are taken as given (no lineshape or
cooling dynamics modelling).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .constants import SR88, PhysicalContext
from .errors import DegenerateThermometryError, InputError, InsufficientDataError

SIDEBAND_CSV_HEADER = "delay_s,P_bsb,P_rsb,trials"


@dataclass(frozen=True)
class SidebandPoint:
    """One delayed sideband measurement."""

    delay: float   # s
    p_bsb: float   # blue sideband transition probability
    p_rsb: float   # red sideband transition probability
    trials: int    # shots per sideband

    def __post_init__(self) -> None:
        if self.delay < 0:
            raise InputError("delay must be >= 0")
        for name in ("p_bsb", "p_rsb"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise InputError(f"{name} must be a probability in [0, 1]")
        if self.trials < 1:
            raise InputError("trials must be >= 1")


@dataclass(frozen=True)
class SidebandSeries:
    """Ordered sideband measurements at increasing delay, plus the trap frequency."""

    points: tuple
    trap_frequency: float  # Hz

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        if self.trap_frequency <= 0:
            raise InputError("trap_frequency must be > 0")
        delays = [p.delay for p in self.points]
        if any(b <= a for a, b in zip(delays, delays[1:])):
            raise InputError("delays must be strictly increasing")

    def write_csv(self, path) -> None:
        lines = [SIDEBAND_CSV_HEADER]
        for p in self.points:
            lines.append(f"{p.delay!r},{p.p_bsb!r},{p.p_rsb!r},{p.trials}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def read_csv(cls, path, trap_frequency: float) -> "SidebandSeries":
        path = Path(path)
        lines = [ln for ln in path.read_text(encoding="utf-8").splitlines()
                 if ln.strip() and not ln.startswith("#")]
        if not lines:
            raise InputError(f"{path}: empty sideband file")
        if lines[0].strip() != SIDEBAND_CSV_HEADER:
            raise InputError(
                f"{path}: expected header '{SIDEBAND_CSV_HEADER}', got '{lines[0].strip()}'")
        points = []
        for i, ln in enumerate(lines[1:], start=2):
            parts = ln.split(",")
            if len(parts) != 4:
                raise InputError(f"{path}:{i}: expected 4 columns, got {len(parts)}")
            try:
                points.append(SidebandPoint(float(parts[0]), float(parts[1]),
                                            float(parts[2]), int(float(parts[3]))))
            except ValueError as exc:
                raise InputError(f"{path}:{i}: {exc}") from None
        if not points:
            raise InputError(f"{path}: no data rows")
        return cls(tuple(points), trap_frequency)


def phonon_number(p_bsb: float, p_rsb: float) -> float:
    """Mean phonon number n = P_rsb / (P_bsb - P_rsb).

    Raises DegenerateThermometryError when P_bsb <= P_rsb, where the
    estimator leaves its validity range.
    """
    if not (0.0 <= p_rsb <= 1.0 and 0.0 <= p_bsb <= 1.0):
        raise InputError("sideband probabilities must lie in [0, 1]")
    if p_bsb <= p_rsb:
        raise DegenerateThermometryError(
            f"P_bsb={p_bsb} <= P_rsb={p_rsb}: phonon number out of validity range")
    return p_rsb / (p_bsb - p_rsb)


def binomial_probability_error(p: float, trials: int) -> float:
    """Binomial standard error sqrt(p(1-p)/N), floored at 1/(2N).

    The floor avoids zero weights at p in {0, 1}.
    """
    if trials < 1:
        raise InputError("trials must be >= 1")
    return max(math.sqrt(p * (1.0 - p) / trials), 0.5 / trials)


def phonon_number_error(p_bsb: float, p_rsb: float, trials: int) -> float:
    """Propagated binomial standard error of the phonon-number estimator."""
    phonon_number(p_bsb, p_rsb)  # validates the operating point
    d = p_bsb - p_rsb
    sig_b = binomial_probability_error(p_bsb, trials)
    sig_r = binomial_probability_error(p_rsb, trials)
    # n = r/(b-r): dn/dr = b/(b-r)^2, dn/db = -r/(b-r)^2
    return math.sqrt((p_bsb * sig_r) ** 2 + (p_rsb * sig_b) ** 2) / d**2


def heating_rate(series: SidebandSeries) -> tuple[float, float]:
    """Heating rate from a delayed sideband series.

    Converts each point to (n, sigma_n), then fits a weighted straight line
    n(delay) with free intercept; returns (slope, slope standard error) in
    quanta/s.  Degenerate points (P_bsb <= P_rsb) are skipped with a
    warning; fewer than two usable points raises InsufficientDataError.
    """
    delays, ns, sigmas = [], [], []
    for p in series.points:
        try:
            n = phonon_number(p.p_bsb, p.p_rsb)
        except DegenerateThermometryError as exc:
            warnings.warn(f"skipping degenerate point at delay {p.delay}: {exc}",
                          stacklevel=2)
            continue
        delays.append(p.delay)
        ns.append(n)
        sigmas.append(phonon_number_error(p.p_bsb, p.p_rsb, p.trials))
    if len(delays) < 2:
        raise InsufficientDataError(
            f"need >= 2 valid sideband points, got {len(delays)}")
    x = np.asarray(delays)
    y = np.asarray(ns)
    w = 1.0 / np.asarray(sigmas) ** 2
    xbar = np.sum(w * x) / np.sum(w)
    ybar = np.sum(w * y) / np.sum(w)
    sxx = np.sum(w * (x - xbar) ** 2)
    if sxx <= 0:
        raise InsufficientDataError("delays carry no spread after skipping points")
    slope = float(np.sum(w * (x - xbar) * (y - ybar)) / sxx)
    slope_err = float(math.sqrt(1.0 / sxx))
    return slope, slope_err


def field_noise_from_heating(n_dot: float, frequency: float,
                             ctx: PhysicalContext = SR88) -> float:
    """Electric-field spectral density S_E = 4 m hbar (2 pi f) ndot / q^2."""
    if frequency <= 0:
        raise InputError("frequency must be > 0")
    if n_dot < 0:
        raise InputError("heating rate must be >= 0")
    return 4.0 * ctx.ion_mass * ctx.hbar * (2.0 * math.pi * frequency) * n_dot \
        / ctx.ion_charge**2


def rescale_frequency(s_e: float, f_from: float, f_to: float,
                      exponent: float = 1.0) -> float:
    """Rescale a spectral density between frequencies assuming S ~ f^-exponent.

    The default exponent 1 corresponds to pure 1/f scaling.
    """
    if f_from <= 0 or f_to <= 0:
        raise InputError("frequencies must be > 0")
    return s_e * (f_from / f_to) ** exponent
