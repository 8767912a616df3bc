"""Mel-scale frequency mapping and triangular filterbank construction.

Filter edges are equally spaced on the mel axis; the triangles are
linear in Hz between those edges and evaluated at the exact FFT bin
frequencies, so adjacent filters sum to exactly 1 between the first and
last peaks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateFilterError,
    InvalidBandError,
    InvalidFftLengthError,
    NegativeFrequencyError,
    NegativeMelError,
)

# HTK-style mel scale constants
_MEL_SCALE = 2595.0
_MEL_BREAK_HZ = 700.0


@dataclass(frozen=True)
class FilterBank:
    """M x K triangular filter weights plus the M+2 edge/peak frequencies."""

    weights: np.ndarray
    center_frequencies: np.ndarray
    fft_length: int
    sampling_frequency: int

    @property
    def num_filters(self) -> int:
        return self.weights.shape[0]


def hz_to_mel(f):
    """mel = 2595 * log10(1 + f/700)"""
    f = np.asarray(f, dtype=np.float64)
    if np.any(f < 0):
        raise NegativeFrequencyError("frequency must be >= 0 Hz")
    return _MEL_SCALE * np.log10(1.0 + f / _MEL_BREAK_HZ)


def mel_to_hz(m):
    """f = 700 * (10^(m/2595) - 1)"""
    m = np.asarray(m, dtype=np.float64)
    if np.any(m < 0):
        raise NegativeMelError("mel value must be >= 0")
    return _MEL_BREAK_HZ * (10.0 ** (m / _MEL_SCALE) - 1.0)


def build_filterbank(
    num_filters: int,
    fft_length: int,
    sampling_frequency: int,
    low_freq: float = 0.0,
    high_freq: float | None = None,
) -> FilterBank:
    """Build M triangular mel filters over the K = N/2 + 1 FFT bins.

    Filter i rises linearly in Hz from 0 at edge i-1 to 1 at peak i and
    falls back to 0 at edge i+1.
    """
    if num_filters < 1:
        raise InvalidBandError(f"num_filters must be >= 1, got {num_filters}")
    if fft_length < 1 or (fft_length & (fft_length - 1)) != 0:
        raise InvalidFftLengthError(f"fft_length {fft_length} is not a power of two")
    nyquist = sampling_frequency / 2.0
    if high_freq is None:
        high_freq = nyquist
    if not 0.0 <= low_freq < high_freq <= nyquist:
        raise InvalidBandError(
            f"band [{low_freq}, {high_freq}] must satisfy 0 <= low < high <= {nyquist}"
        )

    mel_points = np.linspace(hz_to_mel(low_freq), hz_to_mel(high_freq), num_filters + 2)
    hz_points = mel_to_hz(mel_points)
    # pin the endpoints so round-trip error cannot push them past the band
    hz_points[0] = low_freq
    hz_points[-1] = high_freq

    bin_spacing = sampling_frequency / fft_length
    if np.min(np.diff(hz_points)) < bin_spacing:
        raise DegenerateFilterError(
            f"adjacent filter edges closer than one bin ({bin_spacing:.2f} Hz); "
            "reduce num_filters or increase fft_length"
        )

    num_bins = fft_length // 2 + 1
    bin_freqs = np.arange(num_bins) * bin_spacing

    weights = np.zeros((num_filters, num_bins))
    for i in range(1, num_filters + 1):
        left, peak, right = hz_points[i - 1], hz_points[i], hz_points[i + 1]
        rising = (bin_freqs - left) / (peak - left)
        falling = (right - bin_freqs) / (right - peak)
        weights[i - 1] = np.maximum(0.0, np.minimum(rising, falling))

    return FilterBank(
        weights=weights,
        center_frequencies=hz_points,
        fft_length=fft_length,
        sampling_frequency=sampling_frequency,
    )
