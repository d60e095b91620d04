"""Fourier helpers shared by the transform and evolution modules."""

import numpy as np


def wavenumbers(n: int, length: float) -> np.ndarray:
    """Angular wavenumbers in numpy's FFT ordering for a window of given length."""
    return 2.0 * np.pi * np.fft.fftfreq(n, d=length / n)


def derivative(values: np.ndarray, length: float, order: int = 1) -> np.ndarray:
    """Spectral derivative along the last axis (periodic window)."""
    n = values.shape[-1]
    k = wavenumbers(n, length)
    return np.fft.ifft(np.fft.fft(values) * (1j * k) ** order)


def shifted(values: np.ndarray, length: float, shifts) -> np.ndarray:
    """Band-limited translates values(x + s), one row per shift.

    The signal is treated as periodic with the given window length; callers
    mask wrapped regions themselves.
    """
    n = values.shape[-1]
    k = wavenumbers(n, length)
    spectrum = np.fft.fft(values)
    shifts = np.atleast_1d(np.asarray(shifts, dtype=np.float64))
    phases = np.exp(1j * np.outer(shifts, k))
    return np.fft.ifft(spectrum[None, :] * phases, axis=1)
