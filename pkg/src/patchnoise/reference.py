"""Embedded reference fit parameters and the synthetic datasets built from them.

The reference table holds the eight published (S0, T0, beta) rows for the
measured gold-trap datasets; S0 is stored in the table's display unit of
1e-15 V^2/m^2/Hz.  Since the raw measurements are not redistributable,
bundled datasets are generated from these rows with a fixed seed and a
documented 5% multiplicative Gaussian error model, never shipped as blobs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import NoiseDataset
from .errors import InputError

S0_UNIT = 1e-15  # V^2/m^2/Hz per table unit

DEFAULT_SYNTHETIC_SEED = 12345
DEFAULT_NOISE_FRACTION = 0.05
DEFAULT_FREQUENCY = 1e6  # Hz


@dataclass(frozen=True)
class ReferenceRow:
    label: str
    s0: float       # 1e-15 V^2/m^2/Hz
    s0_err: float
    t0: float       # K
    t0_err: float
    beta: float
    beta_err: float
    note: str

    @property
    def s0_si(self) -> float:
        return self.s0 * S0_UNIT

    @property
    def s0_err_si(self) -> float:
        return self.s0_err * S0_UNIT


_ROWS = (
    ReferenceRow("I", 65.0, 3.0, 73.0, 3.0, 3.0, 0.2, "6th cooldown"),
    ReferenceRow("II", 42.0, 2.0, 46.0, 1.0, 4.1, 0.1, "Initial cooldown"),
    ReferenceRow("III a", 167.0, 7.0, 46.0, 1.0, 3.6, 0.2, "Initial cooldown"),
    ReferenceRow("III b", 120.0, 10.0, 45.0, 3.0, 3.5, 0.2,
                 "Temperature cycle to 130K while in vacuum"),
    ReferenceRow("III c", 54.0, 3.0, 44.0, 2.0, 3.2, 0.1,
                 "Temperature cycle to 340K while in vacuum"),
    ReferenceRow("III d", 60.0, 4.0, 49.0, 4.0, 2.1, 0.1,
                 "Recleaning in lab solvents in air"),
    ReferenceRow("III e", 18.0, 3.0, 17.0, 3.0, 1.8, 0.1,
                 "Recleaning in lab solvents in air"),
    ReferenceRow("IV", 3300.0, 40.0, 73.0, 1.0, 3.2, 0.1,
                 "Following the room temperature measurements"),
)


@dataclass(frozen=True)
class ReferenceTable:
    rows: tuple

    def __len__(self) -> int:
        return len(self.rows)

    def get(self, label: str) -> ReferenceRow:
        key = label.strip().lower().replace(" ", "")
        for row in self.rows:
            if row.label.lower().replace(" ", "") == key:
                return row
        raise InputError(f"no reference row labelled {label!r}; "
                         f"known: {', '.join(r.label for r in self.rows)}")

    def labels(self) -> tuple:
        return tuple(r.label for r in self.rows)


def load_reference_table() -> ReferenceTable:
    """The eight embedded (S0, T0, beta) reference rows with 1-sigma errors."""
    return ReferenceTable(_ROWS)


def temperature_grid(n_temps: int = 12, t_min: float = 7.0,
                     t_max: float = 100.0) -> np.ndarray:
    """Log-spaced measurement temperatures covering the cryostat range."""
    if n_temps < 2 or not 0 < t_min < t_max:
        raise InputError("need n_temps >= 2 and 0 < t_min < t_max")
    return np.geomspace(t_min, t_max, n_temps)


def synthetic_temp_scaling_dataset(label: str, *,
                                   seed: int = DEFAULT_SYNTHETIC_SEED,
                                   n_temps: int = 12,
                                   t_min: float = 7.0, t_max: float = 100.0,
                                   noise: float = DEFAULT_NOISE_FRACTION,
                                   frequency: float = DEFAULT_FREQUENCY) -> NoiseDataset:
    """Synthetic dataset drawn from a reference row.

    S(T) = S0 (1 + (T/T0)^beta) in SI, with multiplicative Gaussian noise
    of fractional width ``noise``; the error column records the true
    fractional sigma.  Deterministic for identical arguments.
    """
    row = load_reference_table().get(label)
    t = temperature_grid(n_temps, t_min, t_max)
    truth = row.s0_si * (1.0 + (t / row.t0) ** row.beta)
    rng = np.random.Generator(np.random.Philox(key=seed))
    s = truth * (1.0 + noise * rng.standard_normal(t.size)) if noise > 0 else truth
    return NoiseDataset(f"synthetic-{row.label.replace(' ', '')}",
                        t, np.full_like(t, frequency), s, noise * truth)


def synthetic_arrhenius_dataset(*, s0: float = 5e-14, s_t: float = 6e-12,
                                t0: float = 40.0,
                                seed: int = DEFAULT_SYNTHETIC_SEED,
                                n_temps: int = 12,
                                t_min: float = 7.0, t_max: float = 100.0,
                                noise: float = DEFAULT_NOISE_FRACTION,
                                frequency: float = DEFAULT_FREQUENCY) -> NoiseDataset:
    """Synthetic activated-anomaly dataset S(T) = S0 + S_T exp(-T0/T).

    Default generator values give the post-roughening scale: roughly two
    orders of magnitude above the pre-anomaly plateau, knee near 40 K.
    """
    t = temperature_grid(n_temps, t_min, t_max)
    truth = s0 + s_t * np.exp(-t0 / t)
    rng = np.random.Generator(np.random.Philox(key=seed))
    s = truth * (1.0 + noise * rng.standard_normal(t.size)) if noise > 0 else truth
    return NoiseDataset("synthetic-anomaly", t, np.full_like(t, frequency),
                        s, noise * truth)
