import numpy as np
import pytest

from windeval import (
    Field2D,
    GridSpec,
    ValidationError,
    bicubic_upsample,
    bilinear_upsample,
    decimate,
    era5_like_grid,
    nearest_regrid,
    nearest_upsample,
)

from oracles import brute_nearest_cell


def field_of(values, grid=None):
    values = np.asarray(values, dtype=float)
    if grid is None:
        grid = era5_like_grid(*values.shape)
    return Field2D(grid, values)


class TestDecimate:
    def test_32_to_8(self):
        field = field_of(np.random.default_rng(0).normal(size=(32, 32)))
        out = decimate(field, 4)
        assert out.shape == (8, 8)
        assert out.grid.lat_step == pytest.approx(field.grid.lat_step * 4)
        assert out.grid.spacing_s == pytest.approx(field.grid.spacing_s * 4)

    def test_constant_preserved(self):
        out = decimate(field_of(np.full((8, 8), 2.5)), 4)
        np.testing.assert_array_equal(out.values, 2.5)

    def test_index_arithmetic(self):
        cols = 32
        vals = np.arange(32 * cols, dtype=float).reshape(32, cols)
        out = decimate(field_of(vals), 4)
        for i in range(8):
            for j in range(8):
                assert out.values[i, j] == (i * 4) * cols + (j * 4)

    def test_non_divisible_rejected(self):
        with pytest.raises(ValidationError) as err:
            decimate(field_of(np.zeros((30, 32))), 4)
        assert err.value.code == "non-divisible-decimation"

    def test_bad_factor_rejected(self):
        with pytest.raises(ValidationError):
            decimate(field_of(np.zeros((8, 8))), 1)


def cosmo_like_target(rows=34, cols=42):
    # 4x-coarsened 0.055-degree grid = 0.22 degrees, inside the source box
    return GridSpec(rows, cols, 47.1, 5.1, 0.22, 0.22, 22.0)


class TestNearestRegrid:
    def test_identity_on_same_grid(self):
        field = field_of(np.random.default_rng(1).normal(size=(8, 8)))
        out = nearest_regrid(field, field.grid)
        np.testing.assert_array_equal(out.values, field.values)

    def test_idempotent(self):
        field = field_of(np.random.default_rng(2).normal(size=(8, 8)))
        once = nearest_regrid(field, field.grid)
        twice = nearest_regrid(once, field.grid)
        np.testing.assert_array_equal(once.values, twice.values)

    def test_constant_source(self):
        src = field_of(np.full((40, 44), 7.0))
        out = nearest_regrid(src, cosmo_like_target())
        np.testing.assert_array_equal(out.values, 7.0)

    def test_era5_to_cosmo_membership_and_brute_force(self):
        src = field_of(np.random.default_rng(3).normal(size=(40, 44)))
        target = cosmo_like_target()
        out = nearest_regrid(src, target)
        assert out.shape == (34, 42)
        source_values = set(src.values.ravel().tolist())
        assert all(v in source_values for v in out.values.ravel().tolist())
        for ti in range(0, 34, 5):
            for tj in range(0, 42, 5):
                lat = target.lat_origin + ti * target.lat_step
                lon = target.lon_origin + tj * target.lon_step
                si, sj = brute_nearest_cell(src.grid, lat, lon)
                assert out.values[ti, tj] == src.values[si, sj]

    def test_uncovered_target_rejected(self):
        src = field_of(np.zeros((8, 8)))
        beyond = GridSpec(8, 8, 30.0, 5.0, 0.25, 0.25, 25.0)
        with pytest.raises(ValidationError) as err:
            nearest_regrid(src, beyond)
        assert err.value.code == "target-not-covered"

    def test_half_cell_tolerance_accepted(self):
        src = field_of(np.random.default_rng(4).normal(size=(8, 8)))
        g = src.grid
        shifted = GridSpec(8, 8, g.lat_origin - 0.1, g.lon_origin, 0.25, 0.25, 25.0)
        nearest_regrid(src, shifted)  # within half a source cell, must not raise


class TestBicubic:
    def test_constant_reproduced(self):
        out = bicubic_upsample(field_of(np.full((6, 6), 3.25)), 4)
        assert out.shape == (24, 24)
        np.testing.assert_allclose(out.values, 3.25, atol=1e-12)

    def test_source_values_reproduced_at_aligned_positions(self):
        field = field_of(np.random.default_rng(5).normal(size=(8, 8)))
        out = bicubic_upsample(field, 4)
        np.testing.assert_allclose(out.values[::4, ::4], field.values, atol=1e-6)

    def test_linear_ramp_reproduced_in_interior(self):
        # clamped borders flatten the outermost interpolation band, so the
        # degree-1 reproduction property holds where the support is interior
        rows = np.arange(10, dtype=float)
        field = field_of(np.add.outer(2.0 * rows, 0.5 * np.arange(10)))
        out = bicubic_upsample(field, 4)
        pos = np.arange(40) / 4.0
        expected = np.add.outer(2.0 * pos, 0.5 * pos)
        inner = slice(4, -8)  # source coordinate in [1, rows-2]
        np.testing.assert_allclose(out.values[inner, inner], expected[inner, inner], atol=1e-12)

    def test_catmull_rom_midpoint_weights(self):
        # hand-derived kernel weights at the half-sample offset
        col = np.array([1.0, 5.0, 2.0, 8.0, 3.0, 9.0])
        field = field_of(np.tile(col, (6, 1)))
        out = bicubic_upsample(field, 2)
        mid = out.values[0, 5]  # source coordinate 2.5 between cols 2 and 3
        expected = (-1 * col[1] + 9 * col[2] + 9 * col[3] - 1 * col[4]) / 16.0
        assert mid == pytest.approx(expected, abs=1e-12)

    def test_grid_steps_divided(self):
        field = field_of(np.zeros((8, 8)))
        out = bicubic_upsample(field, 4)
        assert out.grid.lat_step == pytest.approx(field.grid.lat_step / 4)
        assert out.grid.spacing_s == pytest.approx(field.grid.spacing_s / 4)


class TestBilinear:
    def test_constant(self):
        out = bilinear_upsample(field_of(np.full((4, 4), -1.5)), 4)
        np.testing.assert_allclose(out.values, -1.5, atol=1e-12)

    def test_downscaling_patch_dims(self):
        field = field_of(np.random.default_rng(6).normal(size=(34, 42)))
        out = bilinear_upsample(field, 4)
        assert out.shape == (136, 168)

    def test_midpoint_average(self):
        field = field_of(np.random.default_rng(7).normal(size=(6, 6)))
        out = bilinear_upsample(field, 2)
        a = field.values[2, 1]
        b = field.values[2, 2]
        assert out.values[4, 3] == pytest.approx((a + b) / 2.0, abs=1e-12)

    def test_range_never_widens(self):
        gen = np.random.default_rng(8)
        for _ in range(10):
            field = field_of(gen.uniform(-3, 3, size=(6, 7)))
            out = bilinear_upsample(field, 3)
            assert out.values.min() >= field.values.min() - 1e-12
            assert out.values.max() <= field.values.max() + 1e-12


class TestSharedProperties:
    def test_decimate_inverts_upsampling_on_kept_lattice(self):
        gen = np.random.default_rng(9)
        for up in (bicubic_upsample, bilinear_upsample, nearest_upsample):
            field = field_of(gen.normal(size=(8, 8)))
            back = decimate(up(field, 4), 4)
            np.testing.assert_allclose(back.values, field.values, atol=1e-12)
            assert back.grid == field.grid

    def test_upsamplers_are_linear_operators(self):
        gen = np.random.default_rng(10)
        f = field_of(gen.normal(size=(6, 6)))
        g = field_of(gen.normal(size=(6, 6)))
        alpha, beta = 1.7, -0.4
        combo = field_of(alpha * f.values + beta * g.values)
        for up in (bicubic_upsample, bilinear_upsample):
            lhs = up(combo, 4).values
            rhs = alpha * up(f, 4).values + beta * up(g, 4).values
            np.testing.assert_allclose(lhs, rhs, atol=1e-6)

    def test_bicubic_overshoot_bounded(self):
        gen = np.random.default_rng(11)
        for _ in range(20):
            field = field_of(gen.uniform(0.0, 1.0, size=(8, 8)))
            out = bicubic_upsample(field, 4)
            lo, hi = field.values.min(), field.values.max()
            bound = 0.25 * (hi - lo)
            assert out.values.max() <= hi + bound
            assert out.values.min() >= lo - bound

    def test_nearest_upsample_membership(self):
        field = field_of(np.random.default_rng(12).normal(size=(5, 5)))
        out = nearest_upsample(field, 4)
        assert out.shape == (20, 20)
        vals = set(field.values.ravel().tolist())
        assert all(v in vals for v in out.values.ravel().tolist())
