"""Gridded wind-field data model.

A grid is a regular lat/lon lattice of cell centers: cell ``(i, j)`` sits at
``(lat_origin + i * lat_step, lon_origin + j * lon_step)``. Steps are signed,
so both north-up and south-up storage orders are representable without
flipping arrays. All types are immutable after construction and every
operation is a pure function, so values can be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ValidationError

__all__ = [
    "GridSpec",
    "Field2D",
    "VelocitySample",
    "FieldSeries",
    "NormStats",
    "compute_stats",
    "normalize",
    "denormalize",
    "wind_speed",
    "extract_point_series",
    "extract_patch",
    "field_values",
    "era5_like_grid",
]


@dataclass(frozen=True)
class GridSpec:
    """Geometry of a regular lat/lon grid of cell centers.

    ``spacing_s`` is the scalar grid spacing in kilometers per cell, used to
    report radial wavelengths (``wavelength = spacing_s / wavenumber``).
    """

    rows: int
    cols: int
    lat_origin: float
    lon_origin: float
    lat_step: float
    lon_step: float
    spacing_s: float

    def __post_init__(self):
        if self.rows < 2 or self.cols < 2:
            raise ValidationError("invalid-grid", "grid needs at least 2x2 cells")
        if self.lat_step == 0.0 or self.lon_step == 0.0:
            raise ValidationError("invalid-grid", "grid steps must be nonzero")
        if not self.spacing_s > 0.0:
            raise ValidationError("invalid-grid", "spacing_s must be positive")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def lat_of(self, i: int) -> float:
        return self.lat_origin + i * self.lat_step

    def lon_of(self, j: int) -> float:
        return self.lon_origin + j * self.lon_step

    def lat_bounds(self) -> tuple[float, float]:
        """(min, max) latitude over cell centers, regardless of step sign."""
        last = self.lat_of(self.rows - 1)
        return (min(self.lat_origin, last), max(self.lat_origin, last))

    def lon_bounds(self) -> tuple[float, float]:
        last = self.lon_of(self.cols - 1)
        return (min(self.lon_origin, last), max(self.lon_origin, last))

    def nearest_cell(self, lat: float, lon: float) -> tuple[int, int]:
        """Index of the cell center closest to (lat, lon); ties resolve to
        the lower index so lookups are deterministic."""
        i = _nearest_index(lat, self.lat_origin, self.lat_step, self.rows)
        j = _nearest_index(lon, self.lon_origin, self.lon_step, self.cols)
        return (i, j)

    def contains(self, lat: float, lon: float) -> bool:
        lat_lo, lat_hi = self.lat_bounds()
        lon_lo, lon_hi = self.lon_bounds()
        return lat_lo <= lat <= lat_hi and lon_lo <= lon <= lon_hi


def _nearest_index(coord: float, origin: float, step: float, count: int) -> int:
    t = (coord - origin) / step
    idx = math.ceil(t - 0.5)  # exact midpoints resolve to the lower index
    return min(max(idx, 0), count - 1)


@dataclass(frozen=True)
class Field2D:
    """A single scalar field on a grid; values are row-major ``rows x cols``."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.shape != self.grid.shape:
            raise ValidationError(
                "shape-mismatch",
                f"field values {vals.shape} do not match grid {self.grid.shape}",
            )
        if not np.all(np.isfinite(vals)):
            raise ValidationError("non-finite-values", "field contains NaN or inf")
        vals = np.ascontiguousarray(vals)
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def shape(self) -> tuple[int, int]:
        return self.grid.shape


def field_values(field_or_array) -> np.ndarray:
    """Accept either a :class:`Field2D` or a bare 2D array and return the
    float64 value matrix."""
    vals = getattr(field_or_array, "values", field_or_array)
    vals = np.asarray(vals, dtype=np.float64)
    if vals.ndim != 2:
        raise ValidationError("shape-mismatch", "expected a 2D value matrix")
    return vals


@dataclass(frozen=True)
class VelocitySample:
    """Paired eastward (u) and northward (v) velocity fields at one instant."""

    u: Field2D
    v: Field2D
    timestamp: int

    def __post_init__(self):
        if self.u.grid != self.v.grid:
            raise ValidationError("shape-mismatch", "u and v must share one grid")

    @property
    def grid(self) -> GridSpec:
        return self.u.grid


@dataclass(frozen=True)
class FieldSeries:
    """Time-ordered velocity samples with a uniform step of ``dt`` seconds."""

    samples: tuple[VelocitySample, ...]
    dt: int

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(self.samples))
        if self.dt <= 0:
            raise ValidationError("invalid-series", "dt must be positive")
        ts = [s.timestamp for s in self.samples]
        for a, b in zip(ts, ts[1:]):
            if b - a != self.dt:
                raise ValidationError(
                    "non-uniform-timestep",
                    f"timestamps must increase by dt={self.dt}, got step {b - a}",
                )
        grids = {s.grid for s in self.samples}
        if len(grids) > 1:
            raise ValidationError("shape-mismatch", "all samples must share one grid")

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def grid(self) -> GridSpec:
        if not self.samples:
            raise ValidationError("empty-series", "series has no samples")
        return self.samples[0].grid

    @property
    def timestamps(self) -> np.ndarray:
        return np.array([s.timestamp for s in self.samples], dtype=np.int64)


@dataclass(frozen=True)
class NormStats:
    """Per-channel normalization constants.

    ``u_min``/``u_max`` are physical extrema (m/s) of the training values;
    ``u_mean`` is the mean of the min-max scaled training values and is
    therefore dimensionless in [0, 1]. Same for the v channel.
    """

    u_min: float
    u_max: float
    u_mean: float
    v_min: float
    v_max: float
    v_mean: float

    def __post_init__(self):
        if not (self.u_min < self.u_max and self.v_min < self.v_max):
            raise ValidationError("degenerate-range", "channel min must be below max")
        for mean in (self.u_mean, self.v_mean):
            if not 0.0 <= mean <= 1.0:
                raise ValidationError(
                    "invalid-stats", "scaled channel mean must lie in [0, 1]"
                )


def compute_stats(training: FieldSeries) -> NormStats:
    """Normalization constants from a training series.

    Min/max are exact extrema over all training values per channel; the mean
    is taken after min-max scaling, so it is dimensionless.
    """
    if len(training) == 0:
        raise ValidationError("empty-training-set", "cannot compute stats of nothing")

    def channel(getter):
        lo = min(float(getter(s).values.min()) for s in training.samples)
        hi = max(float(getter(s).values.max()) for s in training.samples)
        if lo == hi:
            raise ValidationError(
                "degenerate-range", f"constant channel (all values {lo})"
            )
        total = math.fsum(float(getter(s).values.sum()) for s in training.samples)
        count = sum(getter(s).values.size for s in training.samples)
        mean_scaled = (total / count - lo) / (hi - lo)
        return lo, hi, mean_scaled

    u_min, u_max, u_mean = channel(lambda s: s.u)
    v_min, v_max, v_mean = channel(lambda s: s.v)
    return NormStats(u_min, u_max, u_mean, v_min, v_max, v_mean)


def _scale(vals: np.ndarray, lo: float, hi: float, mean: float) -> np.ndarray:
    return (vals - lo) / (hi - lo) - mean


def _unscale(vals: np.ndarray, lo: float, hi: float, mean: float) -> np.ndarray:
    return (vals + mean) * (hi - lo) + lo


def normalize(series: FieldSeries, stats: NormStats) -> FieldSeries:
    """Map each channel to [0, 1] by the training extrema, then subtract the
    scaled training mean. Values outside the training range are not clipped."""
    samples = tuple(
        VelocitySample(
            Field2D(s.grid, _scale(s.u.values, stats.u_min, stats.u_max, stats.u_mean)),
            Field2D(s.grid, _scale(s.v.values, stats.v_min, stats.v_max, stats.v_mean)),
            s.timestamp,
        )
        for s in series.samples
    )
    return FieldSeries(samples, series.dt)


def denormalize(series: FieldSeries, stats: NormStats) -> FieldSeries:
    """Exact inverse of :func:`normalize` up to floating rounding."""
    samples = tuple(
        VelocitySample(
            Field2D(s.grid, _unscale(s.u.values, stats.u_min, stats.u_max, stats.u_mean)),
            Field2D(s.grid, _unscale(s.v.values, stats.v_min, stats.v_max, stats.v_mean)),
            s.timestamp,
        )
        for s in series.samples
    )
    return FieldSeries(samples, series.dt)


def wind_speed(sample: VelocitySample) -> Field2D:
    """Speed magnitude ``sqrt(u^2 + v^2)`` of a physical-units sample."""
    return Field2D(sample.grid, np.hypot(sample.u.values, sample.v.values))


def extract_point_series(
    series: FieldSeries, lat: float, lon: float
) -> list[tuple[int, float]]:
    """Wind-speed time series at the grid cell nearest to (lat, lon).

    Returns ``[(timestamp, speed_ms), ...]``. The cell lookup is planar
    nearest-index on the lat/lon lattice with ties toward the lower index.
    """
    if len(series) == 0:
        raise ValidationError("empty-series", "series has no samples")
    grid = series.grid
    if not grid.contains(lat, lon):
        raise ValidationError(
            "point-outside-grid", f"({lat}, {lon}) outside grid bounding box"
        )
    i, j = grid.nearest_cell(lat, lon)
    return [
        (s.timestamp, float(math.hypot(s.u.values[i, j], s.v.values[i, j])))
        for s in series.samples
    ]


def extract_patch(
    field: Field2D, row0: int, col0: int, height: int, width: int
) -> Field2D:
    """Copy a ``height x width`` window with the grid origin shifted to it."""
    grid = field.grid
    if row0 < 0 or col0 < 0 or row0 + height > grid.rows or col0 + width > grid.cols:
        raise ValidationError(
            "patch-out-of-bounds",
            f"patch ({row0},{col0},{height},{width}) not inside {grid.shape}",
        )
    sub = replace(
        grid,
        rows=height,
        cols=width,
        lat_origin=grid.lat_of(row0),
        lon_origin=grid.lon_of(col0),
    )
    return Field2D(sub, field.values[row0 : row0 + height, col0 : col0 + width])


def era5_like_grid(
    rows: int,
    cols: int,
    lat_origin: float = 47.0,
    lon_origin: float = 5.0,
    step: float = 0.25,
    spacing_s: float = 25.0,
) -> GridSpec:
    """A 0.25-degree grid over Germany-like coordinates, the default geometry
    for synthetic datasets."""
    return GridSpec(rows, cols, lat_origin, lon_origin, step, step, spacing_s)
