import numpy as np
import pytest

from depthkit import core
from depthkit.core import Dataset, Direction, Point, RngSeed
from depthkit.errors import PreconditionError


class TestGeneralPosition:
    def test_triangle_true(self):
        ds = Dataset.from_array([[0, 0], [1, 0], [0, 1]])
        assert ds.general_position is True
        assert core.validate_general_position(ds) is True

    def test_collinear_false(self):
        ds = Dataset.from_array([[0, 0], [1, 1], [2, 2]])
        assert ds.general_position is False

    def test_1d_duplicate_false(self):
        ds = Dataset.from_array([[1.0], [2.0], [2.0]])
        assert ds.general_position is False

    def test_1d_distinct_true(self):
        assert Dataset.from_array([[1.0], [2.0], [4.0]]).general_position is True

    def test_too_few_points_flagged(self):
        # the flag promises n >= d+1
        assert Dataset.from_array([[0.0, 0.0], [1.0, 1.5]]).general_position is False

    def test_large_n_sampled_path(self):
        rng = np.random.default_rng(0)
        ds = Dataset.from_array(rng.normal(size=(250, 2)))
        assert core.validate_general_position(ds) is True

    def test_explicit_flag_skips_validation(self):
        ds = Dataset.from_array([[0, 0], [1, 1], [2, 2]], general_position=False)
        assert ds.general_position is False


class TestDirections:
    def test_d2_equal_spacing(self):
        u = core.unit_vectors(2, 2)
        assert np.allclose(u[0], [1, 0], atol=1e-15)
        assert np.allclose(u[1], [0, 1], atol=1e-15)

    def test_d1_sign_closure(self):
        vals = {float(v[0]) for v in core.unit_vectors(1, 5)}
        assert 1.0 in vals and -1.0 in vals

    def test_d3_determinism(self):
        a = core.unit_vectors(3, 100, RngSeed(7))
        b = core.unit_vectors(3, 100, RngSeed(7))
        assert np.array_equal(a, b)

    def test_d3_nested_prefix(self):
        a = core.unit_vectors(3, 100, RngSeed(7))
        c = core.unit_vectors(3, 321, RngSeed(7))
        assert np.array_equal(a, c[:100])

    def test_unit_norm_everywhere(self):
        for d in (1, 2, 3, 5):
            u = core.unit_vectors(d, 64, RngSeed(3))
            assert np.abs(np.linalg.norm(u, axis=1) - 1).max() <= 1e-12

    def test_direction_objects(self):
        dirs = core.random_directions(2, 8, RngSeed(1))
        assert len(dirs) == 8 and all(isinstance(u, Direction) for u in dirs)

    def test_bad_args(self):
        with pytest.raises(PreconditionError):
            core.random_directions(0, 4)
        with pytest.raises(PreconditionError):
            core.random_directions(2, 0)


class TestTypes:
    def test_point_validation(self):
        with pytest.raises(PreconditionError):
            Point([])
        with pytest.raises(PreconditionError):
            Point([float("inf")])

    def test_direction_norm_enforced(self):
        with pytest.raises(PreconditionError):
            Direction([1.0, 1.0])
        u = Direction.from_vector([3.0, 4.0])
        assert u.coords == pytest.approx((0.6, 0.8))

    def test_seed_range(self):
        RngSeed(2**64 - 1)
        with pytest.raises(PreconditionError):
            RngSeed(-1)
        with pytest.raises(PreconditionError):
            RngSeed(2**64)

    def test_dataset_immutable(self):
        ds = Dataset.from_array([[0, 0], [1, 0], [0, 1]])
        with pytest.raises(ValueError):
            ds.as_array()[0, 0] = 5.0

    def test_dimension_mismatch(self):
        with pytest.raises(PreconditionError):
            Dataset([Point([0, 0]), Point([1, 2, 3])])

    def test_points_roundtrip(self):
        ds = Dataset.from_array([[0, 0], [1, 0], [0, 1]])
        assert ds.points[1].coords == (1.0, 0.0)
        assert ds.n == 3 and ds.dim == 2


def test_max_collinear_count():
    ds = Dataset.from_array([[0, 0], [1, 1], [2, 2], [0, 1], [3, 0]])
    assert core.max_collinear_count(ds) == 3
    ds2 = Dataset.from_array([[0, 0], [1, 0], [0, 1], [2, 1]])
    assert core.max_collinear_count(ds2) == 2
    d1 = Dataset.from_array([[1.0], [2.0], [2.0], [3.0]])
    assert core.max_collinear_count(d1) == 2
