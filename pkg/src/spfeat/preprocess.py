"""Signal conditioning before spectral analysis.

Pre-emphasis, frame stacking, and windowing.  All operations are pure:
they return new arrays and never mutate their inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .audio_io import AudioBuffer
from .errors import EmptySignalError, FrameTooLongError, InvalidParameterError

WINDOW_TYPES = ("rectangular", "hamming", "hanning")


@dataclass(frozen=True)
class FrameMatrix:
    """T x L matrix of overlapping frames cut from one signal."""

    data: np.ndarray
    sampling_frequency: int
    frame_length: int
    frame_stride: int

    @property
    def num_frames(self) -> int:
        return self.data.shape[0]


def pre_emphasis(signal: AudioBuffer, alpha: float = 0.97) -> AudioBuffer:
    """First-order high-pass: y[t] = x[t] - alpha * x[t-1], with y[0] = x[0]."""
    if not 0.0 <= alpha < 1.0:
        raise InvalidParameterError(f"alpha must be in [0, 1), got {alpha}")
    x = signal.samples
    if len(x) == 0:
        raise EmptySignalError("pre_emphasis requires a non-empty signal")
    y = x.astype(np.float64, copy=True)
    y[1:] -= alpha * x[:-1]
    return AudioBuffer(samples=y, sampling_frequency=signal.sampling_frequency)


def _seconds_to_samples(duration_s: float, fs: int) -> int:
    # round half away from zero; durations are positive here
    return int(math.floor(duration_s * fs + 0.5))


def stack_frames(
    signal: AudioBuffer,
    frame_length_s: float = 0.020,
    frame_stride_s: float = 0.010,
    zero_padding: bool = True,
) -> FrameMatrix:
    """Cut the signal into overlapping frames of length L with hop S.

    Without padding, trailing samples that do not fill a frame are dropped
    and a signal shorter than one frame is an error.  With padding the
    signal is extended with zeros so every sample lands in some frame.
    """
    for name, dur in (("frame_length", frame_length_s), ("frame_stride", frame_stride_s)):
        if dur <= 0:
            raise InvalidParameterError(f"{name} must be positive, got {dur}")

    fs = signal.sampling_frequency
    length = _seconds_to_samples(frame_length_s, fs)
    stride = _seconds_to_samples(frame_stride_s, fs)
    if length < 1 or stride < 1:
        raise InvalidParameterError(
            f"frame length/stride round to {length}/{stride} samples at fs={fs}"
        )

    x = np.asarray(signal.samples, dtype=np.float64)
    n = len(x)
    if zero_padding:
        if n <= length:
            num_frames = 1
        else:
            num_frames = -((n - length) // -stride) + 1
        padded_len = length + (num_frames - 1) * stride
        if padded_len > n:
            x = np.concatenate([x, np.zeros(padded_len - n)])
    else:
        if n < length:
            raise FrameTooLongError(
                f"signal of {n} samples shorter than frame of {length}"
            )
        num_frames = (n - length) // stride + 1

    frames = np.lib.stride_tricks.sliding_window_view(x, length)[::stride]
    frames = frames[:num_frames].copy()
    return FrameMatrix(
        data=frames,
        sampling_frequency=fs,
        frame_length=length,
        frame_stride=stride,
    )


def window_function(kind: str, length: int) -> np.ndarray:
    """Window samples of the given length; all types give w[0] = 1 for L = 1."""
    if kind not in WINDOW_TYPES:
        raise InvalidParameterError(f"unknown window {kind!r}")
    if kind == "rectangular" or length == 1:
        return np.ones(length)
    # evaluate the first half and mirror it so symmetry is exact
    half = (length + 1) // 2
    phase = 2.0 * np.pi * np.arange(half) / (length - 1)
    if kind == "hamming":
        head = 0.54 - 0.46 * np.cos(phase)
    else:
        head = 0.5 - 0.5 * np.cos(phase)
    w = np.empty(length)
    w[:half] = head
    w[half:] = head[: length - half][::-1]
    return w


def apply_window(frames: FrameMatrix, window: str = "rectangular") -> FrameMatrix:
    """Multiply every frame elementwise by the chosen window."""
    w = window_function(window, frames.frame_length)
    return FrameMatrix(
        data=frames.data * w,
        sampling_frequency=frames.sampling_frequency,
        frame_length=frames.frame_length,
        frame_stride=frames.frame_stride,
    )
