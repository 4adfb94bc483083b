"""Tagged (temperature, frequency, S_E, error) sample collections.

NoiseDataset is the common currency between the simulator, the fitters and
the CLI.  The on-disk form is a CSV with header
``temperature_K,frequency_Hz,SE_V2m2Hz,SE_err_V2m2Hz`` and '.' decimals;
floats are written with shortest round-trip repr so write(read(f)) is
byte-identical for canonical files.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import InputError

CSV_HEADER = "temperature_K,frequency_Hz,SE_V2m2Hz,SE_err_V2m2Hz"


@dataclass
class NoiseDataset:
    label: str
    temperature: np.ndarray   # K
    frequency: np.ndarray     # Hz
    s_e: np.ndarray           # V^2/m^2/Hz
    s_e_err: np.ndarray = field(default=None)  # V^2/m^2/Hz

    def __post_init__(self) -> None:
        self.temperature = np.asarray(self.temperature, dtype=float)
        self.frequency = np.asarray(self.frequency, dtype=float)
        self.s_e = np.asarray(self.s_e, dtype=float)
        if self.s_e_err is None:
            self.s_e_err = np.zeros_like(self.s_e)
        self.s_e_err = np.asarray(self.s_e_err, dtype=float)
        n = self.temperature.size
        if not (self.frequency.size == self.s_e.size == self.s_e_err.size == n):
            raise InputError("dataset columns have unequal lengths")
        if n and not np.all(self.temperature > 0):
            raise InputError("temperatures must be > 0")
        if n and not np.all(self.frequency > 0):
            raise InputError("frequencies must be > 0")
        if n and not np.all(self.s_e >= 0):
            raise InputError("S_E values must be >= 0")
        if n and not np.all(self.s_e_err >= 0):
            raise InputError("S_E errors must be >= 0")

    def __len__(self) -> int:
        return self.temperature.size

    def write_csv(self, path) -> None:
        lines = [CSV_HEADER]
        for t, f, s, e in zip(self.temperature, self.frequency, self.s_e, self.s_e_err):
            lines.append(f"{float(t)!r},{float(f)!r},{float(s)!r},{float(e)!r}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def read_csv(cls, path, label: str | None = None) -> "NoiseDataset":
        path = Path(path)
        text = path.read_text(encoding="utf-8")
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if not lines:
            raise InputError(f"{path}: empty dataset file")
        if lines[0].strip() != CSV_HEADER:
            raise InputError(f"{path}: expected header '{CSV_HEADER}', got '{lines[0].strip()}'")
        rows = []
        for i, ln in enumerate(lines[1:], start=2):
            parts = ln.split(",")
            if len(parts) != 4:
                raise InputError(f"{path}:{i}: expected 4 columns, got {len(parts)}")
            try:
                rows.append([float(p) for p in parts])
            except ValueError as exc:
                raise InputError(f"{path}:{i}: {exc}") from None
        if not rows:
            raise InputError(f"{path}: no data rows")
        arr = np.array(rows, dtype=float)
        return cls(label or path.stem, arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3])
