"""Post-hoc trajectory analysis: periodograms, dominant frequencies,
stationary histograms, and correlation.

Frequencies are in cycles per unit time; the periodogram is normalized so
that (for the rectangular window) the one-sided power sums to the variance
of the mean-subtracted series.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

MIN_SAMPLES = 8
WINDOWS = ("rectangular", "hann")


@dataclass
class Spectrum:
    frequencies: np.ndarray = field(repr=False)
    power: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return self.frequencies.shape[0]


def periodogram(samples, sample_interval: float, window: str = "rectangular") -> Spectrum:
    """One-sided power spectrum of a uniformly sampled series.

    The series is mean-subtracted, optionally Hann-windowed, Fourier
    transformed, and the squared magnitudes are folded onto 0..1/(2 dt)."""
    x = np.asarray(samples, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples, got {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("samples contain non-finite values")
    if window not in WINDOWS:
        raise ValueError(f"unknown window {window!r}; choose from {WINDOWS}")
    if not sample_interval > 0:
        raise ValueError(f"sample_interval must be > 0, got {sample_interval}")

    M = x.shape[0]
    x = x - x.mean()
    if window == "hann":
        w = np.hanning(M)
        x = x * w
        scale = 1.0 / (M * np.sum(w**2))
    else:
        scale = 1.0 / (M * M)
    X = np.fft.rfft(x)
    power = scale * np.abs(X) ** 2
    # fold the two-sided spectrum: double everything except DC and Nyquist
    power[1:] *= 2.0
    if M % 2 == 0:
        power[-1] /= 2.0
    freqs = np.fft.rfftfreq(M, d=sample_interval)
    return Spectrum(freqs, power)


def dominant_frequency(
    spec: Spectrum, fmin: float | None = None, fmax: float | None = None
) -> tuple[float, float]:
    """(frequency, power) of the strongest non-DC bin, optionally band-limited.

    Ties break toward lower frequency; an all-zero band degenerates to its
    lowest bin with power 0."""
    if len(spec) == 0:
        raise ValueError("empty spectrum")
    mask = spec.frequencies > 0.0
    if fmin is not None:
        mask &= spec.frequencies >= fmin
    if fmax is not None:
        mask &= spec.frequencies <= fmax
    if not np.any(mask):
        raise ValueError("no non-DC bins in the requested band")
    freqs = spec.frequencies[mask]
    power = spec.power[mask]
    i = int(np.argmax(power))  # argmax returns the first (lowest-f) maximum
    return float(freqs[i]), float(power[i])


def histogram(samples, bins: int) -> tuple[np.ndarray, np.ndarray]:
    """(edges, densities) with equal-width bins; densities integrate to 1.

    A degenerate (constant) series collapses to a single unit-width bin."""
    x = np.asarray(samples, dtype=np.float64)
    if bins < 2:
        raise ValueError(f"bins must be >= 2, got {bins}")
    if x.size == 0:
        raise ValueError("no samples")
    lo, hi = float(x.min()), float(x.max())
    if lo == hi:
        edges = np.array([lo - 0.5, lo + 0.5])
        return edges, np.array([1.0])
    dens, edges = np.histogram(x, bins=bins, range=(lo, hi), density=True)
    return edges, dens


def pearson_correlation(a, b) -> float:
    """Standard Pearson coefficient of two equal-length series."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1 or a.shape[0] < 2:
        raise ValueError(f"need two equal-length 1-d series of >= 2 samples, got {a.shape} and {b.shape}")
    da, db = a - a.mean(), b - b.mean()
    va, vb = np.dot(da, da), np.dot(db, db)
    if va == 0.0 or vb == 0.0:
        raise ValueError("zero variance series")
    return float(np.dot(da, db) / np.sqrt(va * vb))
