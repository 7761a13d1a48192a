import numpy as np
import pytest

from depthkit import univariate as uv
from depthkit.errors import DegenerateScaleError, PreconditionError


class TestMedian:
    def test_odd_middle(self):
        assert uv.median([1, 2, 3]) == 2.0

    def test_even_average_of_two_middles(self):
        assert uv.median([1, 2, 3, 4]) == 2.5

    def test_singleton(self):
        assert uv.median([5]) == 5.0

    def test_unsorted_input(self):
        assert uv.median([3, 1, 2]) == 2.0

    def test_empty_rejected(self):
        with pytest.raises(PreconditionError):
            uv.median([])

    def test_nan_rejected(self):
        with pytest.raises(PreconditionError):
            uv.median([1.0, float("nan")])


class TestMad:
    def test_symmetric(self):
        assert uv.mad([0, 1, 2]) == 1.0

    def test_constant_sample(self):
        assert uv.mad([1, 1, 1]) == 0.0

    def test_even_n_definitional(self):
        # deviations about Med=1.5 are {1.5, 0.5, 0.5, 1.5}; Med of those
        # is (0.5 + 1.5) / 2
        assert uv.mad([0, 1, 2, 3]) == 1.0


class TestOutlyingness1D:
    def test_at_median(self):
        assert uv.outlyingness_1d(1, [0, 1, 2]) == 0.0

    def test_one_mad_away(self):
        assert uv.outlyingness_1d(0, [0, 1, 2]) == 1.0

    def test_three_mads_away(self):
        assert uv.outlyingness_1d(4, [0, 1, 2]) == 3.0

    def test_zero_mad_raises(self):
        with pytest.raises(DegenerateScaleError):
            uv.outlyingness_1d(0.0, [1, 1, 1])


def test_translation_and_scale_equivariance():
    rng = np.random.default_rng(7)
    for _ in range(50):
        z = rng.normal(size=rng.integers(1, 30))
        s = float(rng.normal() * 10)
        c = float(rng.normal())
        if abs(c) < 1e-3:
            c = 1.0
        assert uv.median(z + s) == pytest.approx(uv.median(z) + s, abs=1e-12)
        assert uv.mad(z + s) == pytest.approx(uv.mad(z), abs=1e-12)
        assert uv.median(c * z) == pytest.approx(c * uv.median(z), abs=1e-12)
        assert uv.mad(c * z) == pytest.approx(abs(c) * uv.mad(z), abs=1e-12)


def test_outlyingness_affine_invariant():
    rng = np.random.default_rng(8)
    for _ in range(50):
        z = rng.normal(size=rng.integers(3, 25))
        if uv.mad(z) == 0:
            continue
        x = float(rng.normal() * 3)
        c = float(rng.uniform(0.2, 5)) * (1 if rng.random() < 0.5 else -1)
        s = float(rng.normal() * 4)
        assert uv.outlyingness_1d(c * x + s, c * z + s) == pytest.approx(
            uv.outlyingness_1d(x, z), rel=1e-12
        )


def test_sample1d_type():
    s = uv.Sample1D([3.0, 1.0])
    assert s.n == 2 and s.values == (3.0, 1.0)
    assert uv.median(s) == 2.0
