"""PSD estimation from time series and extraction of the frequency exponent.

estimate_psd is an averaged modified periodogram (50% overlapping
power-of-two segments, Hann or rectangular window) normalized one-sided so
that sum(psd) * df equals the time-domain variance up to the dropped DC
bin.  fit_alpha extracts alpha from S ~ f^-alpha by a least-squares line
in (ln f, ln S); the S*f presentation used for figure output is provided
by the CLI, the estimator itself always works in log-log coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dataset import NoiseDataset
from .errors import InputError, InsufficientDataError
from .fluctuators import TelegraphTrace

WINDOWS = ("rectangular", "hann")


@dataclass(frozen=True)
class PsdEstimate:
    """One-sided PSD over strictly positive frequencies."""

    frequencies: np.ndarray  # Hz
    psd: np.ndarray          # (signal units)^2 / Hz
    segments: int
    window: str

    def __post_init__(self) -> None:
        if np.any(np.diff(self.frequencies) <= 0) or np.any(self.frequencies <= 0):
            raise InputError("frequencies must be strictly increasing and positive")
        if np.any(self.psd < 0):
            raise InputError("psd values must be >= 0")
        self.frequencies.setflags(write=False)
        self.psd.setflags(write=False)

    def write_csv(self, path) -> None:
        lines = ["frequency_Hz,psd"]
        for f, p in zip(self.frequencies, self.psd):
            lines.append(f"{float(f)!r},{float(p)!r}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def read_csv(cls, path) -> "PsdEstimate":
        path = Path(path)
        lines = [ln for ln in path.read_text(encoding="utf-8").splitlines()
                 if ln.strip() and not ln.startswith("#")]
        if not lines or lines[0].strip() != "frequency_Hz,psd":
            raise InputError(f"{path}: expected header 'frequency_Hz,psd'")
        rows = []
        for i, ln in enumerate(lines[1:], start=2):
            parts = ln.split(",")
            if len(parts) != 2:
                raise InputError(f"{path}:{i}: expected 2 columns")
            rows.append((float(parts[0]), float(parts[1])))
        if not rows:
            raise InputError(f"{path}: no data rows")
        arr = np.array(rows, dtype=float)
        return cls(arr[:, 0], arr[:, 1], segments=0, window="unknown")


@dataclass(frozen=True)
class AlphaFit:
    """Result of fitting S ~ prefactor * f^-alpha over fit_band."""

    alpha: float
    alpha_err: float
    prefactor: float
    fit_band: tuple       # (f_lo, f_hi), Hz
    n_points: int

    def to_report_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "alpha_err": self.alpha_err,
            "prefactor": self.prefactor,
            "f_lo": self.fit_band[0],
            "f_hi": self.fit_band[1],
            "n_points": self.n_points,
        }


def _window(kind: str, length: int) -> np.ndarray:
    if kind == "rectangular":
        return np.ones(length)
    if kind == "hann":
        # periodic form, the usual choice for overlapped averaging
        return 0.5 - 0.5 * np.cos(2.0 * np.pi * np.arange(length) / length)
    raise InputError(f"window must be one of {WINDOWS}, got {kind!r}")


def estimate_psd(trace, segment_length: int, window: str = "hann",
                 sample_rate: float | None = None) -> PsdEstimate:
    """Averaged modified periodogram of a time series.

    ``trace`` is a TelegraphTrace or a plain 1-D array (then ``sample_rate``
    is required).  Segments of power-of-two length overlap by 50%; the
    window power is compensated so summed psd times bin width reproduces
    the signal variance.  The DC bin is dropped (frequencies are strictly
    positive).
    """
    if isinstance(trace, TelegraphTrace):
        x = np.asarray(trace.values, dtype=float)
        fs = trace.sample_rate
    else:
        if sample_rate is None:
            raise InputError("sample_rate is required for plain-array input")
        x = np.asarray(trace, dtype=float)
        fs = float(sample_rate)
    if x.ndim != 1:
        raise InputError("trace must be one-dimensional")
    L = int(segment_length)
    if L < 2 or L & (L - 1):
        raise InputError("segment_length must be a power of two >= 2")
    if L > x.size:
        raise InsufficientDataError(
            f"trace of {x.size} samples is shorter than one segment ({L})")
    w = _window(window, L)
    win_power = float(np.mean(w * w))
    step = L // 2
    n_seg = 1 + (x.size - L) // step
    acc = np.zeros(L // 2 + 1)
    for k in range(n_seg):
        seg = x[k * step:k * step + L] * w
        spec = np.fft.rfft(seg)
        acc += (spec.real * spec.real + spec.imag * spec.imag)
    # one-sided density: double everything except DC and Nyquist
    scale = 1.0 / (fs * L * win_power * n_seg)
    psd = acc * scale
    psd[1:-1] *= 2.0
    if L % 2:  # odd never happens for power of two >= 2, kept for clarity
        psd[-1] *= 2.0
    freqs = np.fft.rfftfreq(L, 1.0 / fs)
    return PsdEstimate(freqs[1:].copy(), psd[1:].copy(), segments=n_seg, window=window)


def _spectrum_arrays(spectrum) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(spectrum, PsdEstimate):
        return spectrum.frequencies, spectrum.psd
    if isinstance(spectrum, NoiseDataset):
        return spectrum.frequency, spectrum.s_e
    raise InputError("spectrum must be a PsdEstimate or NoiseDataset")


def fit_alpha(spectrum, band: tuple) -> AlphaFit:
    """Fit S ~ f^-alpha on [f_lo, f_hi] by least squares in (ln f, ln S).

    alpha is minus the slope; alpha_err comes from the residual variance.
    Requires at least 3 in-band points, all with S > 0.
    """
    f, s = _spectrum_arrays(spectrum)
    f_lo, f_hi = float(band[0]), float(band[1])
    if not 0 < f_lo < f_hi:
        raise InputError("band must satisfy 0 < f_lo < f_hi")
    mask = (f >= f_lo) & (f <= f_hi)
    if int(np.sum(mask)) < 3:
        raise InsufficientDataError(
            f"need >= 3 points in band [{f_lo}, {f_hi}], got {int(np.sum(mask))}")
    fb = f[mask]
    sb = s[mask]
    if np.any(sb <= 0):
        raise InputError("non-positive spectrum values in band; cannot fit in log domain")
    x = np.log(fb)
    y = np.log(sb)
    n = x.size
    xbar = float(np.mean(x))
    sxx = float(np.sum((x - xbar) ** 2))
    slope = float(np.sum((x - xbar) * (y - np.mean(y))) / sxx)
    intercept = float(np.mean(y) - slope * xbar)
    resid = y - (intercept + slope * x)
    s2 = float(np.sum(resid**2)) / (n - 2) if n > 2 else 0.0
    alpha_err = math.sqrt(s2 / sxx)
    return AlphaFit(alpha=-slope, alpha_err=alpha_err,
                    prefactor=math.exp(intercept), fit_band=(f_lo, f_hi), n_points=n)
