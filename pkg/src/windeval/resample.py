"""Coarsening and interpolation operators for gridded fields.

Alignment convention: upsampled output position ``p`` maps to source
coordinate ``p / factor`` (origin-aligned), so point decimation and
upsampling are exact inverses on the kept lattice. Boundaries are handled by
clamping (border replication), which is deterministic and shift-free.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from .errors import ValidationError
from .grid import Field2D, GridSpec

__all__ = [
    "decimate",
    "nearest_regrid",
    "bicubic_upsample",
    "bilinear_upsample",
    "nearest_upsample",
]


def _check_factor(factor: int) -> int:
    if int(factor) != factor or factor < 2:
        raise ValidationError("invalid-factor", "resampling factor must be an integer >= 2")
    return int(factor)


def decimate(field: Field2D, factor: int) -> Field2D:
    """Keep every ``factor``-th grid point starting at index 0.

    Pure point subsampling, no averaging: ``out[i, j] = in[i*factor, j*factor]``.
    """
    factor = _check_factor(factor)
    grid = field.grid
    if grid.rows % factor or grid.cols % factor:
        raise ValidationError(
            "non-divisible-decimation",
            f"grid {grid.shape} is not divisible by factor {factor}",
        )
    out_grid = replace(
        grid,
        rows=grid.rows // factor,
        cols=grid.cols // factor,
        lat_step=grid.lat_step * factor,
        lon_step=grid.lon_step * factor,
        spacing_s=grid.spacing_s * factor,
    )
    return Field2D(out_grid, field.values[::factor, ::factor])


def nearest_regrid(field: Field2D, target: GridSpec) -> Field2D:
    """Resample onto ``target`` by nearest source cell center in lat/lon.

    The target bounding box must lie within the source coverage (source cell
    centers padded by half a source cell).
    """
    src = field.grid
    lat_lo, lat_hi = src.lat_bounds()
    lon_lo, lon_hi = src.lon_bounds()
    pad_lat = abs(src.lat_step) / 2.0
    pad_lon = abs(src.lon_step) / 2.0
    t_lat_lo, t_lat_hi = target.lat_bounds()
    t_lon_lo, t_lon_hi = target.lon_bounds()
    if (
        t_lat_lo < lat_lo - pad_lat
        or t_lat_hi > lat_hi + pad_lat
        or t_lon_lo < lon_lo - pad_lon
        or t_lon_hi > lon_hi + pad_lon
    ):
        raise ValidationError(
            "target-not-covered", "target grid extends beyond source coverage"
        )

    t_lats = target.lat_origin + np.arange(target.rows) * target.lat_step
    t_lons = target.lon_origin + np.arange(target.cols) * target.lon_step
    rows_idx = _nearest_indices(t_lats, src.lat_origin, src.lat_step, src.rows)
    cols_idx = _nearest_indices(t_lons, src.lon_origin, src.lon_step, src.cols)
    return Field2D(target, field.values[np.ix_(rows_idx, cols_idx)])


def _nearest_indices(
    coords: np.ndarray, origin: float, step: float, count: int
) -> np.ndarray:
    t = (coords - origin) / step
    idx = np.ceil(t - 0.5).astype(int)  # exact midpoints go to the lower index
    return np.clip(idx, 0, count - 1)


def _cubic_kernel(x: np.ndarray, a: float = -0.5) -> np.ndarray:
    """Keys cubic convolution kernel; a = -0.5 is the Catmull-Rom spline."""
    ax = np.abs(x)
    ax2 = ax * ax
    ax3 = ax2 * ax
    near = (a + 2.0) * ax3 - (a + 3.0) * ax2 + 1.0
    far = a * ax3 - 5.0 * a * ax2 + 8.0 * a * ax - 4.0 * a
    return np.where(ax <= 1.0, near, np.where(ax < 2.0, far, 0.0))


def _tent_kernel(x: np.ndarray) -> np.ndarray:
    ax = np.abs(x)
    return np.where(ax < 1.0, 1.0 - ax, 0.0)


def _upsample_axis(values: np.ndarray, factor: int, offsets, kernel) -> np.ndarray:
    """Interpolate along the last axis; output index p reads source p/factor."""
    n = values.shape[-1]
    pos = np.arange(n * factor) / factor
    base = np.floor(pos).astype(int)
    frac = pos - base
    out = np.zeros(values.shape[:-1] + (n * factor,), dtype=np.float64)
    for off in offsets:
        idx = np.clip(base + off, 0, n - 1)
        out += values[..., idx] * kernel(frac - off)
    return out


def _upsample(field: Field2D, factor: int, offsets, kernel) -> Field2D:
    factor = _check_factor(factor)
    vals = _upsample_axis(field.values, factor, offsets, kernel)
    vals = _upsample_axis(np.swapaxes(vals, 0, 1), factor, offsets, kernel)
    vals = np.swapaxes(vals, 0, 1)
    grid = field.grid
    out_grid = replace(
        grid,
        rows=grid.rows * factor,
        cols=grid.cols * factor,
        lat_step=grid.lat_step / factor,
        lon_step=grid.lon_step / factor,
        spacing_s=grid.spacing_s / factor,
    )
    return Field2D(out_grid, vals)


def bicubic_upsample(field: Field2D, factor: int) -> Field2D:
    """Cubic-convolution upsampling (Catmull-Rom, a = -0.5, clamped edges).

    Source values are reproduced exactly at source-aligned output positions
    ``(factor*i, factor*j)``.
    """
    return _upsample(field, factor, (-1, 0, 1, 2), _cubic_kernel)


def bilinear_upsample(field: Field2D, factor: int) -> Field2D:
    """Tent-kernel upsampling with the same alignment and edge policy as
    :func:`bicubic_upsample`; never widens the value range."""
    return _upsample(field, factor, (0, 1), _tent_kernel)


def nearest_upsample(field: Field2D, factor: int) -> Field2D:
    """Nearest-neighbor upsampling under the same alignment convention."""
    factor = _check_factor(factor)
    grid = field.grid
    pos_r = np.arange(grid.rows * factor) / factor
    pos_c = np.arange(grid.cols * factor) / factor
    rows_idx = np.clip(np.ceil(pos_r - 0.5).astype(int), 0, grid.rows - 1)
    cols_idx = np.clip(np.ceil(pos_c - 0.5).astype(int), 0, grid.cols - 1)
    out_grid = replace(
        grid,
        rows=grid.rows * factor,
        cols=grid.cols * factor,
        lat_step=grid.lat_step / factor,
        lon_step=grid.lon_step / factor,
        spacing_s=grid.spacing_s / factor,
    )
    return Field2D(out_grid, field.values[np.ix_(rows_idx, cols_idx)])
