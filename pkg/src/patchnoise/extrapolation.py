"""Cross-system comparison calculators.

Power-law scaling of field noise in distance and frequency, the DC
field-fluctuation extrapolation obtained by integrating a 1/f spectrum
over an averaging window, the patch-potential product sigma_V^2 * A, and
the cantilever damping-rate conversion S_E = 4 k_B T Gamma / (C V)^2.

Quoted comparison constants from prior experiments live in
``data/comparison_constants.json`` with citation strings, never inline in
the logic.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

from .constants import K_B
from .errors import InputError


@dataclass(frozen=True)
class ScalingLaw:
    """S_E(d, f) = reference * d^-distance_exponent * f^-frequency_exponent.

    The default reference 1e-21 V^2 m^2 reproduces room-temperature trap
    noise rewritten as S_E = f^-1 d^-4 * 1e-21.  Exponents are parameters
    because probe-size effects are known to soften the distance law.
    """

    distance_exponent: float = 4.0
    frequency_exponent: float = 1.0
    reference: float = 1e-21   # V^2 m^2 (units for the default exponents)

    def __post_init__(self) -> None:
        if not self.reference > 0:
            raise InputError("reference must be > 0")


@dataclass(frozen=True)
class CantileverConfig:
    """Damping-rate measurement of field noise above a surface."""

    gamma: float        # kg/s, force per velocity
    capacitance: float  # F
    voltage: float      # V
    temperature: float  # K

    def __post_init__(self) -> None:
        for name in ("gamma", "capacitance", "voltage", "temperature"):
            if not getattr(self, name) > 0:
                raise InputError(f"{name} must be > 0")


@dataclass(frozen=True)
class PatchStatistics:
    """DC-limit summary: field spread, patch product, averaging time."""

    sigma_e: float        # V/m
    sigma_v2_a: float     # V^2 m^2
    averaging_time: float  # s

    def __post_init__(self) -> None:
        for name in ("sigma_e", "sigma_v2_a", "averaging_time"):
            if getattr(self, name) < 0:
                raise InputError(f"{name} must be >= 0")


def scale_noise(law: ScalingLaw, distance: float, frequency: float) -> float:
    """Field-noise spectral density at (d, f) under the power-law scaling."""
    if distance <= 0 or frequency <= 0:
        raise InputError("distance and frequency must be > 0")
    return (law.reference * distance ** (-law.distance_exponent)
            * frequency ** (-law.frequency_exponent))


def dc_field_fluctuation(law: ScalingLaw, distance: float, tau: float,
                         tau0: float) -> float:
    """RMS field fluctuation accumulated over averaging time tau.

    sigma_E^2 = (S_E * f) * ln(tau / tau0), which uses only the
    frequency-independent product S_E * f of a pure 1/f spectrum.  Refuses
    laws with frequency_exponent != 1, where that product is undefined.
    """
    if law.frequency_exponent != 1.0:
        raise InputError(
            "DC extrapolation is defined only for a 1/f spectrum "
            f"(frequency_exponent == 1), got {law.frequency_exponent}")
    if not tau > tau0 > 0:
        raise InputError("require tau > tau0 > 0")
    if distance <= 0:
        raise InputError("distance must be > 0")
    se_times_f = law.reference * distance ** (-law.distance_exponent)
    return math.sqrt(se_times_f * math.log(tau / tau0))


def patch_product(sigma_e: float, distance: float) -> float:
    """Patch-potential product sigma_V^2 * A ~ sigma_E^2 * d^4."""
    if sigma_e < 0:
        raise InputError("sigma_e must be >= 0")
    if distance <= 0:
        raise InputError("distance must be > 0")
    return sigma_e**2 * distance**4


def cantilever_field_noise(cfg: CantileverConfig, k_b: float = K_B) -> float:
    """Field noise inferred from mechanical damping: 4 k_B T Gamma / (C V)^2."""
    return 4.0 * k_b * cfg.temperature * cfg.gamma / (cfg.capacitance * cfg.voltage) ** 2


def load_comparison_constants() -> dict:
    """Quoted reference values from prior static-field experiments.

    Returns a mapping name -> {value, units, source}.
    """
    text = resources.files("patchnoise").joinpath(
        "data/comparison_constants.json").read_text(encoding="utf-8")
    return json.loads(text)
