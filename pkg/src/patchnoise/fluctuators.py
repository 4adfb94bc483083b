"""Monte-Carlo population of thermally activated two-state fluctuators.

Each fluctuator is a symmetric random-telegraph process with activation
energy E (stored in Kelvin, i.e. E/k_B), switching time

    tau(T) = tau0 * exp(E / T),

and a fixed amplitude.  Activation energies follow the power-law density
D(E) ~ E^(beta-1) on [e_min, e_max], sampled by inverse CDF.  The ensemble
produces noise spectra by Lorentzian superposition and time-domain
realizations as summed telegraph signals.

Randomness comes from numpy's counter-based Philox generator, which is
seedable and stable across platforms; telegraph streams are split per
fluctuator by keying Philox with (seed, fluctuator_index).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import kernels
from .errors import InputError, ResourceLimitError

# Switching times are capped here to keep (omega*tau)^2 finite.
TAU_CAP = 1e30  # s

# Guard for telegraph simulation: max expected flips summed over fluctuators.
MAX_TOTAL_FLIPS = 5e7

_JSON_KEYS = ("beta", "e_min_K", "e_max_K", "tau0_s", "n", "amplitude", "seed")


@dataclass(frozen=True)
class EnsembleConfig:
    """Parameters of a fluctuator population.

    Energies are in Kelvin (E/k_B).  The defaults e_min=10 K, e_max=3000 K
    bracket the dominant activation energy E ~ 12*T for T in [7, 100] K
    with margin.  ``amplitude`` is the per-fluctuator field amplitude in
    arbitrary units; the overall scale is a free calibration constant.
    """

    beta: float
    e_min: float = 10.0       # K
    e_max: float = 3000.0     # K
    tau0: float = 1e-12       # s
    n_fluctuators: int = 10000
    amplitude: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.beta > 0:
            raise InputError("beta must be > 0")
        if not 0 < self.e_min < self.e_max:
            raise InputError("require 0 < e_min < e_max")
        if not self.tau0 > 0:
            raise InputError("tau0 must be > 0")
        if self.n_fluctuators < 1:
            raise InputError("n_fluctuators must be >= 1")
        if not self.amplitude > 0:
            raise InputError("amplitude must be > 0")
        if not 0 <= int(self.seed) < 2**64:
            raise InputError("seed must be a 64-bit unsigned integer")

    def to_json_dict(self) -> dict:
        return {
            "beta": self.beta,
            "e_min_K": self.e_min,
            "e_max_K": self.e_max,
            "tau0_s": self.tau0,
            "n": self.n_fluctuators,
            "amplitude": self.amplitude,
            "seed": self.seed,
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "EnsembleConfig":
        missing = [k for k in _JSON_KEYS if k not in doc]
        if missing:
            raise InputError(f"ensemble config missing keys: {', '.join(missing)}")
        try:
            return cls(
                beta=float(doc["beta"]),
                e_min=float(doc["e_min_K"]),
                e_max=float(doc["e_max_K"]),
                tau0=float(doc["tau0_s"]),
                n_fluctuators=int(doc["n"]),
                amplitude=float(doc["amplitude"]),
                seed=int(doc["seed"]),
            )
        except (TypeError, ValueError) as exc:
            raise InputError(f"ensemble config field invalid: {exc}") from None

    def write_json(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json_dict(), indent=2) + "\n",
                              encoding="utf-8")

    @classmethod
    def read_json(cls, path) -> "EnsembleConfig":
        try:
            doc = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
        if not isinstance(doc, dict):
            raise InputError(f"{path}: expected a JSON object")
        return cls.from_json_dict(doc)

    def with_seed(self, seed: int) -> "EnsembleConfig":
        return replace(self, seed=seed)


@dataclass(frozen=True)
class FluctuatorEnsemble:
    """A sampled population: activation energies (K), amplitudes, tau0 (s)."""

    energies: np.ndarray
    amplitudes: np.ndarray
    tau0: float

    def __post_init__(self) -> None:
        if self.energies.shape != self.amplitudes.shape:
            raise InputError("energies and amplitudes must have equal length")
        self.energies.setflags(write=False)
        self.amplitudes.setflags(write=False)

    def __len__(self) -> int:
        return self.energies.size


@dataclass(frozen=True)
class TelegraphTrace:
    """Time series of the summed fluctuator states at a fixed sample rate."""

    sample_rate: float  # Hz
    values: np.ndarray
    seed: int

    def __post_init__(self) -> None:
        if self.values.size < 2:
            raise InputError("trace must hold at least 2 samples")
        if not np.all(np.isfinite(self.values)):
            raise InputError("trace values must be finite")
        self.values.setflags(write=False)

    def write_csv(self, path) -> None:
        lines = ["time_s,value"]
        dt = 1.0 / self.sample_rate
        for i, v in enumerate(self.values):
            lines.append(f"{i * dt!r},{float(v)!r}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def read_csv(cls, path, seed: int = 0) -> "TelegraphTrace":
        path = Path(path)
        lines = [ln for ln in path.read_text(encoding="utf-8").splitlines()
                 if ln.strip() and not ln.startswith("#")]
        if not lines or lines[0].strip() != "time_s,value":
            raise InputError(f"{path}: expected header 'time_s,value'")
        times, values = [], []
        for i, ln in enumerate(lines[1:], start=2):
            parts = ln.split(",")
            if len(parts) != 2:
                raise InputError(f"{path}:{i}: expected 2 columns")
            times.append(float(parts[0]))
            values.append(float(parts[1]))
        if len(values) < 2:
            raise InputError(f"{path}: need at least 2 samples")
        dts = np.diff(times)
        if not np.all(dts > 0):
            raise InputError(f"{path}: times must be strictly increasing")
        return cls(1.0 / float(np.mean(dts)), np.asarray(values, dtype=float), seed)


def sample_ensemble(cfg: EnsembleConfig) -> FluctuatorEnsemble:
    """Draw a fluctuator population from the configured energy density.

    Energies are i.i.d. with density D(E) ~ E^(beta-1) on [e_min, e_max],
    via the inverse CDF E = (e_min^beta + u (e_max^beta - e_min^beta))^(1/beta)
    with u uniform in [0, 1).  Bit-identical for identical (config, seed).
    """
    rng = np.random.Generator(np.random.Philox(key=cfg.seed))
    u = rng.random(cfg.n_fluctuators)
    lo = cfg.e_min**cfg.beta
    hi = cfg.e_max**cfg.beta
    energies = (lo + u * (hi - lo)) ** (1.0 / cfg.beta)
    amplitudes = np.full(cfg.n_fluctuators, cfg.amplitude, dtype=float)
    return FluctuatorEnsemble(energies, amplitudes, cfg.tau0)


def switching_time(energy, temperature: float, tau0: float):
    """Thermally activated switching time tau = tau0 * exp(E / T).

    Energies and temperature are both in Kelvin.  Values that would
    overflow are capped at TAU_CAP exactly; test saturation with
    ``switching_time_saturated``.
    """
    if temperature <= 0:
        raise InputError("temperature must be > 0")
    if tau0 <= 0:
        raise InputError("tau0 must be > 0")
    e = np.asarray(energy, dtype=float)
    cap_expo = math.log(TAU_CAP / tau0)
    expo = e / temperature
    tau = np.where(expo >= cap_expo, TAU_CAP, tau0 * np.exp(np.minimum(expo, cap_expo)))
    if np.ndim(energy) == 0:
        return float(tau)
    return tau


def switching_time_saturated(energy, temperature: float, tau0: float):
    """Saturation flag: True where switching_time hit the TAU_CAP guard."""
    if temperature <= 0:
        raise InputError("temperature must be > 0")
    e = np.asarray(energy, dtype=float)
    flag = e / temperature >= math.log(TAU_CAP / tau0)
    if np.ndim(energy) == 0:
        return bool(flag)
    return flag


def ensemble_spectrum(ens: FluctuatorEnsemble, temperature: float,
                      frequencies) -> np.ndarray:
    """One-sided noise PSD of the ensemble at temperature T.

    S(f) = sum_i 4 a_i^2 tau_i / (1 + (2 pi f tau_i)^2) with
    tau_i = switching_time(E_i, T, tau0).  The per-fluctuator reduction
    order is fixed, so the result is deterministic on every backend.
    """
    freqs = np.atleast_1d(np.asarray(frequencies, dtype=float))
    if not np.all(freqs > 0):
        raise InputError("frequencies must be > 0")
    tau = switching_time(ens.energies, temperature, ens.tau0)
    omega = 2.0 * math.pi * freqs
    amp_sq = ens.amplitudes * ens.amplitudes
    return kernels.lorentzian_mixture_psd(np.asarray(tau), amp_sq, omega)


def _flip_times(rng: np.random.Generator, tau: float, duration: float) -> np.ndarray:
    """Exact exponential flip times of one fluctuator over [0, duration)."""
    mean_wait = 2.0 * tau  # per-state flip rate 1/(2 tau)
    expected = duration / mean_wait
    n_draw = int(expected + 6.0 * math.sqrt(expected) + 16.0)
    waits = rng.exponential(mean_wait, n_draw)
    times = np.cumsum(waits)
    while times.size and times[-1] < duration:
        waits = rng.exponential(mean_wait, n_draw)
        times = np.concatenate([times, times[-1] + np.cumsum(waits)])
    return times[times < duration]


def telegraph_trace(ens: FluctuatorEnsemble, temperature: float,
                    sample_rate: float, duration: float, seed: int,
                    max_samples: int = 2**26) -> TelegraphTrace:
    """Simulate the summed random-telegraph signal of the ensemble.

    Each fluctuator flips between +-a_i with exact exponential waiting
    times of mean 2*tau_i (per-state flip rate 1/(2 tau_i)), starting from
    a random stationary state, and is sampled on the regular grid
    t_j = j / sample_rate.  Fluctuator i uses the Philox stream keyed by
    (seed, i), so the trace is bit-identical for identical inputs.
    """
    if sample_rate <= 0:
        raise InputError("sample_rate must be > 0")
    if duration <= 0:
        raise InputError("duration must be > 0")
    n = int(round(duration * sample_rate))
    if n < 2:
        raise InputError("duration * sample_rate must give at least 2 samples")
    if n > max_samples:
        raise ResourceLimitError(
            f"requested {n} samples exceeds the cap of {max_samples}")
    tau = np.asarray(switching_time(ens.energies, temperature, ens.tau0))
    expected_flips = float(np.sum(duration / (2.0 * tau)))
    if expected_flips > MAX_TOTAL_FLIPS:
        raise ResourceLimitError(
            f"expected {expected_flips:.3g} flips exceeds the cap of {MAX_TOTAL_FLIPS:.3g}; "
            "reduce duration or the ensemble's hot-fluctuator content")
    grid = np.arange(n, dtype=float) / sample_rate
    values = np.zeros(n, dtype=float)
    for i in range(len(ens)):
        rng = np.random.Generator(np.random.Philox(key=np.array([seed, i], dtype=np.uint64)))
        initial_state = 1.0 if rng.random() < 0.5 else -1.0
        flips = _flip_times(rng, float(tau[i]), duration)
        kernels.telegraph_accumulate(values, grid, flips,
                                     float(ens.amplitudes[i]), initial_state)
    return TelegraphTrace(sample_rate, values, seed)
