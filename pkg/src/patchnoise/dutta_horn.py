"""Analytic activated-ensemble (Dutta-Horn) model: quadrature spectrum,
the alpha(T) frequency exponent, the crossover temperature, and the
Johnson-noise comparison curve.

The noise of a continuum of thermally activated two-state processes with
activation-energy density D(E) is

    S(omega, T) = C * Integral D(E) * tau / (1 + omega^2 tau^2) dE,
    tau = tau0 * exp(E / T),   E in Kelvin.

Two densities are supported.  ``floor=True`` (default) uses

    D(E) = (1 + (E/E0)^beta) / E,   E0 = t0 * ln(1/(omega_ref tau0)),

whose high-energy tail is the power law E^(beta-1) and whose saddle-point
temperature dependence is exactly S0 (1 + (T/t0)^beta); the frequency
slope of this integral reproduces ``model_alpha``.  ``floor=False`` drops
the 1/E term, leaving the bare power-law density used by the Monte-Carlo
fluctuator ensemble, which is the right choice for cross-checking against
``ensemble_spectrum`` on identical D(E).

The integrand is evaluated through 1/(2 cosh(ln(omega tau0) + E/T)) so that
exp(E/T) never overflows (E/T reaches ~400 at the range edges).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.integrate import quad

from .dataset import NoiseDataset
from .errors import InputError, QuadratureError
from .fluctuators import EnsembleConfig

# Pivot frequency fixing the floor density's knee energy E0 (the measurement
# band of the data this model is meant to describe).
REFERENCE_FREQUENCY = 1e6  # Hz


@dataclass(frozen=True)
class DuttaHornParams:
    """Activated-ensemble model parameters.

    ``t0`` (K) is the knee temperature of the equivalent empirical form
    S0 (1 + (T/t0)^beta); ``s0`` is its low-temperature plateau value used
    by ``calibrated_spectrum``.
    """

    beta: float
    t0: float
    s0: float = 1.0
    tau0: float = 1e-12   # s
    e_min: float = 10.0   # K
    e_max: float = 3000.0  # K

    def __post_init__(self) -> None:
        if not self.beta > 0:
            raise InputError("beta must be > 0")
        if not self.t0 > 0:
            raise InputError("t0 must be > 0")
        if not self.s0 > 0:
            raise InputError("s0 must be > 0")
        if not self.tau0 > 0:
            raise InputError("tau0 must be > 0")
        if not 0 < self.e_min < self.e_max:
            raise InputError("require 0 < e_min < e_max")

    def to_json_dict(self) -> dict:
        return {
            "beta": self.beta,
            "t0_K": self.t0,
            "s0": self.s0,
            "tau0_s": self.tau0,
            "e_min_K": self.e_min,
            "e_max_K": self.e_max,
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "DuttaHornParams":
        try:
            return cls(
                beta=float(doc["beta"]),
                t0=float(doc["t0_K"]),
                s0=float(doc.get("s0", 1.0)),
                tau0=float(doc.get("tau0_s", 1e-12)),
                e_min=float(doc.get("e_min_K", 10.0)),
                e_max=float(doc.get("e_max_K", 3000.0)),
            )
        except KeyError as exc:
            raise InputError(f"model parameters missing key: {exc}") from None
        except (TypeError, ValueError) as exc:
            raise InputError(f"model parameter invalid: {exc}") from None


@dataclass(frozen=True)
class ResistivityCurve:
    """Electrode resistivity samples (T, rho), strictly increasing in T."""

    temperatures: np.ndarray  # K
    rho: np.ndarray           # Ohm m

    def __post_init__(self) -> None:
        t = np.asarray(self.temperatures, dtype=float)
        r = np.asarray(self.rho, dtype=float)
        if t.size != r.size or t.size < 2:
            raise InputError("need >= 2 matching (T, rho) samples")
        if np.any(np.diff(t) <= 0):
            raise InputError("temperatures must be strictly increasing")
        if np.any(r <= 0):
            raise InputError("resistivities must be > 0")
        object.__setattr__(self, "temperatures", t)
        object.__setattr__(self, "rho", r)

    @classmethod
    def read_csv(cls, path) -> "ResistivityCurve":
        path = Path(path)
        lines = [ln for ln in path.read_text(encoding="utf-8").splitlines()
                 if ln.strip() and not ln.startswith("#")]
        if not lines or lines[0].strip() != "temperature_K,rho_ohm_m":
            raise InputError(f"{path}: expected header 'temperature_K,rho_ohm_m'")
        rows = []
        for i, ln in enumerate(lines[1:], start=2):
            parts = ln.split(",")
            if len(parts) != 2:
                raise InputError(f"{path}:{i}: expected 2 columns")
            rows.append((float(parts[0]), float(parts[1])))
        arr = np.array(rows, dtype=float)
        return cls(arr[:, 0], arr[:, 1])


def _knee_energy(p: DuttaHornParams) -> float:
    return p.t0 * math.log(1.0 / (2.0 * math.pi * REFERENCE_FREQUENCY * p.tau0))


def spectrum_integral(p: DuttaHornParams, omega: float, temperature: float,
                      *, floor: bool = True, epsrel: float = 1e-8) -> float:
    """Quadrature of the activated-ensemble spectrum at (omega, T), C = 1.

    Adaptive quadrature to relative tolerance ``epsrel``; raises
    QuadratureError with diagnostics if it does not converge.  See the
    module docstring for the two density choices.
    """
    if omega <= 0:
        raise InputError("omega must be > 0")
    if temperature <= 0:
        raise InputError("temperature must be > 0")
    ln_wtau0 = math.log(omega * p.tau0)
    beta = p.beta
    e0 = _knee_energy(p) if floor else None

    def integrand(e: float) -> float:
        y = ln_wtau0 + e / temperature
        ay = abs(y)
        # tau/(1 + omega^2 tau^2) = 1/(2 omega cosh(y)), evaluated stably
        lorentz = math.exp(-ay) / (1.0 + math.exp(-2.0 * ay)) / omega
        if e0 is None:
            dens = e ** (beta - 1.0)
        else:
            dens = (1.0 + (e / e0) ** beta) / e
        return dens * lorentz

    # the Lorentzian factor peaks where omega*tau = 1, i.e. E = -T ln(omega tau0)
    peak = -temperature * ln_wtau0
    pts = [x for x in (0.5 * peak, peak, 2.0 * peak) if p.e_min < x < p.e_max]
    value, abserr, info, *rest = quad(
        integrand, p.e_min, p.e_max, points=pts or None,
        epsrel=epsrel, epsabs=0.0, limit=200, full_output=True)
    if rest:
        raise QuadratureError(
            f"spectrum quadrature failed at omega={omega:g}, T={temperature:g}: "
            f"{rest[0]} (value={value:g}, abserr={abserr:g}, "
            f"subintervals={info['last']})")
    return float(value)


def calibrated_spectrum(p: DuttaHornParams, omega, temperature,
                        *, omega_ref: float | None = None,
                        t_ref: float | None = None,
                        target: float | None = None,
                        floor: bool = True, epsrel: float = 1e-8):
    """Spectrum with the free constant C pinned at a reference point.

    By default the value at (2 pi * 1 MHz, T = t0) is set to 2 * s0, the
    knee value of the empirical form S0 (1 + (T/t0)^beta).  ``omega`` and
    ``temperature`` may be scalars or arrays (broadcast elementwise).
    """
    if omega_ref is None:
        omega_ref = 2.0 * math.pi * REFERENCE_FREQUENCY
    if t_ref is None:
        t_ref = p.t0
    if target is None:
        target = 2.0 * p.s0
    ref = spectrum_integral(p, omega_ref, t_ref, floor=floor, epsrel=epsrel)
    scale = target / ref
    om = np.atleast_1d(np.asarray(omega, dtype=float))
    tt = np.atleast_1d(np.asarray(temperature, dtype=float))
    om_b, tt_b = np.broadcast_arrays(om, tt)
    out = np.array([
        scale * spectrum_integral(p, float(w), float(t), floor=floor, epsrel=epsrel)
        for w, t in zip(om_b.ravel(), tt_b.ravel())
    ]).reshape(om_b.shape)
    if np.ndim(omega) == 0 and np.ndim(temperature) == 0:
        return float(out.reshape(-1)[0])
    return out


def model_alpha(p: DuttaHornParams, omega: float, temperature: float) -> float:
    """Temperature-dependent frequency exponent of the activated model.

    alpha = 1 - (1/ln(omega tau0)) * (beta x / (1 + x) - 1),
    x = (T/t0)^beta.  Requires omega * tau0 < 1 so the logarithm is
    negative and nonzero; alpha crosses 1 exactly at the crossover
    temperature.
    """
    if temperature <= 0:
        raise InputError("temperature must be > 0")
    wt = omega * p.tau0
    if not 0 < wt < 1:
        raise InputError(f"require 0 < omega*tau0 < 1, got {wt:g}")
    x = (temperature / p.t0) ** p.beta
    return 1.0 - (p.beta * x / (1.0 + x) - 1.0) / math.log(wt)


def crossover_temperature(p: DuttaHornParams) -> float:
    """Temperature t0 / (beta - 1)^(1/beta) where alpha passes through 1."""
    if p.beta <= 1:
        raise InputError(
            f"no crossover: beta must exceed 1, got {p.beta}")
    return p.t0 / (p.beta - 1.0) ** (1.0 / p.beta)


def johnson_prediction(rho: ResistivityCurve, t_grid) -> NoiseDataset:
    """Thermal-voltage (Johnson-like) noise shape S(T) ~ rho(T) * T.

    Resistivity is linearly interpolated; the curve is normalized to 1 at
    the smallest grid temperature (shape only, arbitrary scale).  Grid
    temperatures outside the sampled range raise InputError.
    """
    t = np.atleast_1d(np.asarray(t_grid, dtype=float))
    if t.size == 0:
        raise InputError("empty temperature grid")
    if np.any(t < rho.temperatures[0]) or np.any(t > rho.temperatures[-1]):
        raise InputError(
            "temperature grid extends outside the resistivity curve "
            f"[{rho.temperatures[0]:g}, {rho.temperatures[-1]:g}] K")
    s = np.interp(t, rho.temperatures, rho.rho) * t
    order = np.argsort(t)
    t_sorted = t[order]
    s_sorted = s[order]
    s_sorted = s_sorted / s_sorted[0]
    return NoiseDataset("johnson-prediction", t_sorted,
                        np.full_like(t_sorted, REFERENCE_FREQUENCY), s_sorted)


def ensemble_expectation_spectrum(cfg: EnsembleConfig, temperature: float,
                                  frequencies, *, epsrel: float = 1e-8) -> np.ndarray:
    """Exact expectation of ensemble_spectrum over the energy draws.

    The ensemble samples E with density beta E^(beta-1)/(e_max^beta -
    e_min^beta), so E[S(f)] = n a^2 * 4 beta/(e_max^beta - e_min^beta) *
    Integral E^(beta-1) tau/(1 + omega^2 tau^2) dE.  Serves as the
    quadrature-side oracle when cross-checking the Monte-Carlo spectrum.
    """
    p = DuttaHornParams(beta=cfg.beta, t0=1.0, s0=1.0, tau0=cfg.tau0,
                        e_min=cfg.e_min, e_max=cfg.e_max)
    freqs = np.atleast_1d(np.asarray(frequencies, dtype=float))
    norm = (cfg.n_fluctuators * cfg.amplitude**2 * 4.0 * cfg.beta
            / (cfg.e_max**cfg.beta - cfg.e_min**cfg.beta))
    return norm * np.array([
        spectrum_integral(p, 2.0 * math.pi * f, temperature, floor=False,
                          epsrel=epsrel)
        for f in freqs
    ])
