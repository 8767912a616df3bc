"""Per-frame frequency-domain transforms.

The production path is an iterative radix-2 FFT written here and
vectorized across frames; ``naive_dft`` is the O(N^2) defining sum kept
as the independent correctness oracle for the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidFftLengthError
from .preprocess import FrameMatrix

# Power floor applied before taking logs: 10*log10(1e-30) = -300 dB.
POWER_FLOOR = 1e-30


@dataclass(frozen=True)
class SpectrumMatrix:
    """T x K matrix of per-frame spectral values, K = fft_length/2 + 1."""

    data: np.ndarray
    kind: str  # magnitude | power | log_power
    fft_length: int
    sampling_frequency: int


def naive_dft(frame) -> np.ndarray:
    """DFT by its definition: X[k] = sum_n x[n] exp(-2*pi*i*k*n/N)."""
    x = np.asarray(frame, dtype=np.float64)
    n = len(x)
    grid = np.outer(np.arange(n), np.arange(n))
    return np.exp(-2j * np.pi * grid / n) @ x


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def default_fft_length(frame_length: int) -> int:
    """Smallest power of two that holds a frame."""
    n = 1
    while n < frame_length:
        n *= 2
    return n


def _fft_rows(x: np.ndarray) -> np.ndarray:
    """Iterative radix-2 decimation-in-time FFT of each row of a real T x N matrix."""
    num_rows, n = x.shape
    stages = n.bit_length() - 1

    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.intp)
    for b in range(stages):
        rev |= ((idx >> b) & 1) << (stages - 1 - b)

    y = x[:, rev].astype(np.complex128)
    size = 2
    while size <= n:
        half = size // 2
        twiddle = np.exp(-2j * np.pi * np.arange(half) / size)
        y = y.reshape(num_rows, n // size, size)
        even = y[:, :, :half]
        odd = y[:, :, half:] * twiddle
        y = np.concatenate((even + odd, even - odd), axis=2)
        size *= 2
    return y.reshape(num_rows, n)


def _padded_rows(frames: FrameMatrix, fft_length: int) -> np.ndarray:
    if not _is_power_of_two(fft_length):
        raise InvalidFftLengthError(f"fft_length {fft_length} is not a power of two")
    if fft_length < frames.frame_length:
        raise InvalidFftLengthError(
            f"fft_length {fft_length} shorter than frame length {frames.frame_length}"
        )
    rows = np.zeros((frames.num_frames, fft_length))
    rows[:, : frames.frame_length] = frames.data
    return rows


def fft_magnitude(frames: FrameMatrix, fft_length: int) -> SpectrumMatrix:
    """Magnitude spectrum |X[k]| for bins k = 0 .. N/2 of each frame."""
    spectra = _fft_rows(_padded_rows(frames, fft_length))
    half = spectra[:, : fft_length // 2 + 1]
    return SpectrumMatrix(
        data=np.abs(half),
        kind="magnitude",
        fft_length=fft_length,
        sampling_frequency=frames.sampling_frequency,
    )


def power_spectrum(frames: FrameMatrix, fft_length: int) -> SpectrumMatrix:
    """Power spectrum P[k] = |X[k]|^2 / N of each frame."""
    mag = fft_magnitude(frames, fft_length)
    return SpectrumMatrix(
        data=mag.data**2 / fft_length,
        kind="power",
        fft_length=fft_length,
        sampling_frequency=frames.sampling_frequency,
    )


def log_power_spectrum(
    frames: FrameMatrix, fft_length: int, normalize: bool = True
) -> SpectrumMatrix:
    """Power spectrum in dB, floored at -300 dB; optionally shifted to max 0."""
    power = power_spectrum(frames, fft_length)
    log_power = 10.0 * np.log10(np.maximum(power.data, POWER_FLOOR))
    if normalize:
        log_power = log_power - log_power.max()
    return SpectrumMatrix(
        data=log_power,
        kind="log_power",
        fft_length=fft_length,
        sampling_frequency=frames.sampling_frequency,
    )
