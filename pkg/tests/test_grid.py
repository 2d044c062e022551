import numpy as np
import pytest

from windeval import (
    Field2D,
    FieldSeries,
    GridSpec,
    NormStats,
    ValidationError,
    VelocitySample,
    compute_stats,
    denormalize,
    era5_like_grid,
    extract_patch,
    extract_point_series,
    normalize,
    wind_speed,
)

from conftest import make_series
from oracles import brute_nearest_cell


def toy_series(u_vals, v_vals=None):
    grid = era5_like_grid(2, 2)
    u = np.array(u_vals, dtype=float).reshape(2, 2)
    v = np.array(v_vals if v_vals is not None else u_vals, dtype=float).reshape(2, 2)
    sample = VelocitySample(Field2D(grid, u), Field2D(grid, v), 0)
    return FieldSeries((sample,), 3600)


class TestTypes:
    def test_grid_invariants(self):
        with pytest.raises(ValidationError):
            GridSpec(1, 8, 47.0, 5.0, 0.25, 0.25, 25.0)
        with pytest.raises(ValidationError):
            GridSpec(8, 8, 47.0, 5.0, 0.0, 0.25, 25.0)
        with pytest.raises(ValidationError):
            GridSpec(8, 8, 47.0, 5.0, 0.25, 0.25, 0.0)

    def test_field_rejects_nan_and_shape_mismatch(self):
        grid = era5_like_grid(4, 4)
        bad = np.ones((4, 4))
        bad[2, 2] = np.nan
        with pytest.raises(ValidationError):
            Field2D(grid, bad)
        with pytest.raises(ValidationError):
            Field2D(grid, np.ones((4, 5)))

    def test_field_values_are_frozen(self):
        field = Field2D(era5_like_grid(4, 4), np.ones((4, 4)))
        with pytest.raises(ValueError):
            field.values[0, 0] = 2.0

    def test_velocity_sample_requires_shared_grid(self):
        g1 = era5_like_grid(4, 4)
        g2 = era5_like_grid(4, 4, lat_origin=48.0)
        with pytest.raises(ValidationError):
            VelocitySample(Field2D(g1, np.ones((4, 4))), Field2D(g2, np.ones((4, 4))), 0)

    def test_series_requires_uniform_steps(self):
        grid = era5_like_grid(4, 4)
        mk = lambda ts: VelocitySample(
            Field2D(grid, np.ones((4, 4))), Field2D(grid, np.ones((4, 4))), ts
        )
        with pytest.raises(ValidationError):
            FieldSeries((mk(0), mk(3600), mk(7300)), 3600)
        with pytest.raises(ValidationError):
            FieldSeries((mk(0), mk(-3600)), 3600)

    def test_norm_stats_invariants(self):
        with pytest.raises(ValidationError):
            NormStats(1.0, 1.0, 0.5, 0.0, 1.0, 0.5)
        with pytest.raises(ValidationError):
            NormStats(0.0, 1.0, 1.5, 0.0, 1.0, 0.5)


class TestStats:
    def test_symmetric_extrema(self):
        series = toy_series([0.0, 5.0, 10.0, 5.0])
        stats = compute_stats(series)
        assert stats.u_min == 0.0
        assert stats.u_max == 10.0
        assert stats.u_mean == pytest.approx(0.5)

    def test_constant_channel_rejected(self):
        with pytest.raises(ValidationError) as err:
            compute_stats(toy_series([3.0, 3.0, 3.0, 3.0]))
        assert err.value.code == "degenerate-range"

    def test_empty_series_rejected(self):
        with pytest.raises(ValidationError) as err:
            compute_stats(FieldSeries((), 3600))
        assert err.value.code == "empty-training-set"

    def test_permutation_invariance(self):
        series = make_series(rows=6, cols=6, count=8, seed=3)
        shuffled = FieldSeries(
            tuple(
                VelocitySample(s.u, s.v, i * series.dt)
                for i, s in enumerate(reversed(series.samples))
            ),
            series.dt,
        )
        a = compute_stats(series)
        b = compute_stats(shuffled)
        assert a.u_min == b.u_min and a.u_max == b.u_max
        assert a.u_mean == pytest.approx(b.u_mean, rel=1e-12)
        assert a.v_mean == pytest.approx(b.v_mean, rel=1e-12)


class TestNormalize:
    STATS = NormStats(0.0, 10.0, 0.4, -5.0, 5.0, 0.5)

    def test_bounds_map_to_mean_offsets(self):
        series = toy_series([0.0, 10.0, 5.0, 2.5], [-5.0, 5.0, 0.0, 0.0])
        out = normalize(series, self.STATS)
        u = out.samples[0].u.values.ravel()
        assert u[0] == pytest.approx(-0.4)        # x = u_min -> -u_mean
        assert u[1] == pytest.approx(1.0 - 0.4)   # x = u_max -> 1 - u_mean
        v = out.samples[0].v.values.ravel()
        assert v[2] == pytest.approx(0.0)         # midpoint with mean 0.5 -> 0

    def test_out_of_range_values_not_clipped(self):
        series = toy_series([20.0, -10.0, 5.0, 5.0])
        u = normalize(series, self.STATS).samples[0].u.values.ravel()
        assert u[0] > 1.0 - 0.4
        assert u[1] < -0.4

    def test_round_trip_identity(self):
        series = toy_series([0.0, 10.0, 5.0, 2.5])
        stats = compute_stats(series)
        back = denormalize(normalize(series, stats), stats)
        np.testing.assert_allclose(
            back.samples[0].u.values, series.samples[0].u.values, atol=1e-6
        )

    def test_round_trip_property_100_trials(self):
        gen = np.random.default_rng(7)
        for _ in range(100):
            lo = gen.uniform(-30, 0)
            hi = lo + gen.uniform(1e-3, 60)
            series = make_series(rows=4, cols=4, count=2, seed=int(gen.integers(1 << 30)))
            stats = NormStats(lo, hi, 0.3, lo, hi, 0.7)
            back = denormalize(normalize(series, stats), stats)
            for s_in, s_out in zip(series.samples, back.samples):
                assert np.max(np.abs(s_in.u.values - s_out.u.values)) < 1e-6
                assert np.max(np.abs(s_in.v.values - s_out.v.values)) < 1e-6


class TestWindSpeed:
    def test_pythagorean_triple(self):
        grid = era5_like_grid(2, 2)
        u = Field2D(grid, np.full((2, 2), 3.0))
        v = Field2D(grid, np.full((2, 2), 4.0))
        speed = wind_speed(VelocitySample(u, v, 0))
        np.testing.assert_allclose(speed.values, 5.0)

    def test_zero(self):
        grid = era5_like_grid(2, 2)
        z = Field2D(grid, np.zeros((2, 2)))
        np.testing.assert_array_equal(wind_speed(VelocitySample(z, z, 0)).values, 0.0)

    def test_sign_invariance(self):
        series = make_series(rows=4, cols=4, count=1, seed=5)
        s = series.samples[0]
        flipped = VelocitySample(
            Field2D(s.grid, -s.u.values), Field2D(s.grid, -s.v.values), 0
        )
        np.testing.assert_array_equal(wind_speed(s).values, wind_speed(flipped).values)


class TestPointSeries:
    def test_reference_point_lookup_matches_brute_force(self):
        # 32x32 ERA5-like grid over Germany; the (53.55 N, 7.8 E) analysis point
        series = make_series(rows=32, cols=32, count=3, seed=11)
        grid = series.grid
        expected = brute_nearest_cell(grid, 53.55, 7.8)
        assert grid.nearest_cell(53.55, 7.8) == expected
        points = extract_point_series(series, 53.55, 7.8)
        i, j = expected
        for (ts, speed), sample in zip(points, series.samples):
            assert ts == sample.timestamp
            assert speed == pytest.approx(
                float(np.hypot(sample.u.values[i, j], sample.v.values[i, j]))
            )

    def test_exact_cell_center(self):
        series = make_series(rows=8, cols=8, count=1, seed=2)
        grid = series.grid
        assert grid.nearest_cell(grid.lat_of(3), grid.lon_of(5)) == (3, 5)

    def test_midpoint_ties_to_lower_index(self):
        grid = era5_like_grid(8, 8)
        mid_lat = (grid.lat_of(2) + grid.lat_of(3)) / 2
        assert grid.nearest_cell(mid_lat, grid.lon_of(0)) == (2, 0)

    def test_outside_grid_rejected(self):
        series = make_series(rows=8, cols=8, count=1, seed=2)
        lat_hi = series.grid.lat_bounds()[1]
        with pytest.raises(ValidationError) as err:
            extract_point_series(series, lat_hi + 1.0, series.grid.lon_of(0))
        assert err.value.code == "point-outside-grid"

    def test_random_points_match_brute_force(self, rng):
        series = make_series(rows=10, cols=14, count=1, seed=9)
        grid = series.grid
        lat_lo, lat_hi = grid.lat_bounds()
        lon_lo, lon_hi = grid.lon_bounds()
        for _ in range(50):
            lat = rng.uniform(lat_lo, lat_hi)
            lon = rng.uniform(lon_lo, lon_hi)
            assert grid.nearest_cell(lat, lon) == brute_nearest_cell(grid, lat, lon)


class TestPatch:
    def test_paper_patch_geometry(self):
        series = make_series(rows=40, cols=40, count=1, seed=1)
        patch = extract_patch(series.samples[0].u, 4, 4, 32, 32)
        assert patch.shape == (32, 32)
        assert patch.grid.lat_origin == pytest.approx(series.grid.lat_of(4))

    def test_full_field_identity(self):
        series = make_series(rows=8, cols=8, count=1, seed=1)
        field = series.samples[0].u
        patch = extract_patch(field, 0, 0, 8, 8)
        assert patch.grid == field.grid
        np.testing.assert_array_equal(patch.values, field.values)

    def test_out_of_bounds_rejected(self):
        field = make_series(rows=8, cols=8, count=1, seed=1).samples[0].u
        with pytest.raises(ValidationError) as err:
            extract_patch(field, 2, 0, 8, 4)
        assert err.value.code == "patch-out-of-bounds"

    def test_point_series_consistent_with_patch(self):
        series = make_series(rows=12, cols=12, count=3, seed=13)
        patched = FieldSeries(
            tuple(
                VelocitySample(
                    extract_patch(s.u, 2, 3, 6, 6), extract_patch(s.v, 2, 3, 6, 6), s.timestamp
                )
                for s in series.samples
            ),
            series.dt,
        )
        lat = series.grid.lat_of(4)
        lon = series.grid.lon_of(5)
        assert extract_point_series(patched, lat, lon) == extract_point_series(
            series, lat, lon
        )
