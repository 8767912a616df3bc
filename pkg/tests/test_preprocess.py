import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spfeat.audio_io import AudioBuffer
from spfeat.errors import EmptySignalError, FrameTooLongError, InvalidParameterError
from spfeat.preprocess import apply_window, pre_emphasis, stack_frames, window_function


def buf(samples, fs=1000):
    return AudioBuffer(samples=np.asarray(samples, dtype=np.float64), sampling_frequency=fs)


class TestPreEmphasis:
    def test_zero_signal(self):
        assert pre_emphasis(buf([0, 0, 0]), 0.97).samples.tolist() == [0, 0, 0]

    def test_alpha_zero_is_identity(self):
        assert pre_emphasis(buf([1, 2, 3]), 0.0).samples.tolist() == [1, 2, 3]

    def test_recurrence(self):
        assert pre_emphasis(buf([1, 2, 3]), 0.5).samples.tolist() == [1.0, 1.5, 2.0]

    def test_empty_signal(self):
        with pytest.raises(EmptySignalError):
            pre_emphasis(buf([]), 0.97)

    def test_alpha_out_of_range(self):
        with pytest.raises(InvalidParameterError):
            pre_emphasis(buf([1.0]), 1.0)

    @given(st.lists(st.floats(-1, 1), min_size=1, max_size=100))
    def test_alpha_zero_identity_property(self, samples):
        out = pre_emphasis(buf(samples), 0.0)
        assert out.samples.tolist() == samples

    def test_does_not_mutate_input(self):
        b = buf([1, 2, 3])
        pre_emphasis(b, 0.9)
        assert b.samples.tolist() == [1, 2, 3]


def brute_force_frames(x, length, stride, zero_padding):
    """Oracle: enumerate frame start indices and slice directly."""
    x = list(x)
    if zero_padding:
        if len(x) <= length:
            count = 1
        else:
            count = math.ceil((len(x) - length) / stride) + 1
        padded = x + [0.0] * (length + (count - 1) * stride - len(x))
    else:
        assert len(x) >= length
        count = (len(x) - length) // stride + 1
        padded = x
    return [padded[t * stride : t * stride + length] for t in range(count)]


class TestStackFrames:
    def test_enumerated_example(self):
        fm = stack_frames(buf(range(10), fs=1), 4, 2, zero_padding=False)
        assert fm.data.tolist() == [
            [0, 1, 2, 3],
            [2, 3, 4, 5],
            [4, 5, 6, 7],
            [6, 7, 8, 9],
        ]
        assert fm.frame_length == 4 and fm.frame_stride == 2

    def test_frame_count_16k(self):
        fm = stack_frames(buf(np.ones(16000), 16000), 0.020, 0.010, zero_padding=False)
        assert fm.data.shape == (99, 320)

    def test_padding_count_and_trailing_zeros(self):
        x = np.ones(16050)
        fm = stack_frames(buf(x, 16000), 0.020, 0.010, zero_padding=True)
        assert fm.data.shape == (100, 320)
        # padded length 16160, so the last frame ends with 110 zeros
        assert fm.data[-1, -110:].tolist() == [0.0] * 110
        assert fm.data[-1, :-110].tolist() == [1.0] * 210

    @pytest.mark.parametrize("zero_padding", [False, True])
    def test_exact_single_frame(self, zero_padding):
        fm = stack_frames(buf(np.arange(320), 16000), 0.020, 0.010, zero_padding)
        assert fm.data.shape == (1, 320)

    def test_too_short_without_padding(self):
        with pytest.raises(FrameTooLongError):
            stack_frames(buf(np.ones(100), 16000), 0.020, 0.010, zero_padding=False)

    @pytest.mark.parametrize("length,stride", [(-0.02, 0.01), (0.02, 0.0)])
    def test_invalid_durations(self, length, stride):
        with pytest.raises(InvalidParameterError):
            stack_frames(buf(np.ones(1000), 16000), length, stride)

    @given(
        st.integers(1, 300),
        st.integers(1, 50),
        st.integers(1, 25),
        st.booleans(),
        st.randoms(use_true_random=False),
    )
    @settings(max_examples=200)
    def test_rows_match_brute_force(self, n, length, stride, zero_padding, rng):
        if not zero_padding and n < length:
            n = length + n
        x = [rng.uniform(-1, 1) for _ in range(n)]
        fm = stack_frames(
            buf(x, fs=1000), length / 1000, stride / 1000, zero_padding
        )
        assert fm.data.tolist() == brute_force_frames(x, length, stride, zero_padding)

    def test_stride_equals_length_partitions(self):
        x = np.arange(17, dtype=float)
        fm = stack_frames(buf(x, fs=1000), 0.005, 0.005, zero_padding=True)
        flat = fm.data.reshape(-1)
        assert flat[:17].tolist() == x.tolist()
        assert np.all(flat[17:] == 0)


class TestApplyWindow:
    def frames(self, data):
        return stack_frames(
            buf(data, fs=1000), len(data) / 1000, len(data) / 1000, True
        )

    def test_rectangular_identity(self):
        fm = self.frames([1, -2, 3, -4])
        assert apply_window(fm, "rectangular").data.tolist() == fm.data.tolist()

    def test_hamming_five(self):
        out = apply_window(self.frames([1, 1, 1, 1, 1]), "hamming")
        expected = [0.08, 0.54 - 0.46 * math.cos(math.pi / 2), 1.0, 0.54, 0.08]
        np.testing.assert_allclose(out.data[0], expected, atol=1e-15)

    def test_hanning_three(self):
        out = apply_window(self.frames([1, 1, 1]), "hanning")
        np.testing.assert_allclose(out.data[0], [0.0, 1.0, 0.0], atol=1e-16)

    @pytest.mark.parametrize("kind", ["rectangular", "hamming", "hanning"])
    @pytest.mark.parametrize("length", [1, 2, 3, 8, 33, 320])
    def test_symmetry(self, kind, length):
        w = window_function(kind, length)
        np.testing.assert_array_equal(w, w[::-1])

    @pytest.mark.parametrize("kind", ["rectangular", "hamming", "hanning"])
    def test_length_one_is_unity(self, kind):
        assert window_function(kind, 1).tolist() == [1.0]

    def test_unknown_window(self):
        with pytest.raises(InvalidParameterError):
            window_function("blackman", 8)
