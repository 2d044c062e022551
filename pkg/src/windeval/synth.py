"""Synthetic Gaussian random velocity fields with a prescribed radial
power-law spectrum.

Seeded white noise is shaped in frequency space to ``E(k) ~ k**slope`` and
transformed back; each field is rescaled to unit variance. The u and v
channels come from independent draws of one seeded generator, so a config is
fully deterministic: identical seeds give bit-identical series.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .grid import Field2D, FieldSeries, GridSpec, VelocitySample, era5_like_grid

__all__ = ["SynthConfig", "synth_grf"]


@dataclass(frozen=True)
class SynthConfig:
    """Shape, spectral slope, seed and count of a synthetic series.

    ``k_cutoff`` optionally zeroes all energy above that radial wavenumber,
    producing band-limited fields.
    """

    rows: int
    cols: int
    spectral_slope: float
    seed: int
    count: int
    k_cutoff: float | None = None

    def __post_init__(self):
        if self.rows < 4 or self.cols < 4:
            raise ValidationError("invalid-config", "synthetic fields need >= 4x4")
        if self.spectral_slope > 0.0:
            raise ValidationError("invalid-config", "spectral slope must be <= 0")
        if self.count < 1:
            raise ValidationError("invalid-config", "count must be >= 1")


def _radial_amplitude(cfg: SynthConfig) -> np.ndarray:
    kx = np.fft.fftfreq(cfg.rows) * cfg.rows
    ky = np.fft.fftfreq(cfg.cols) * cfg.cols
    radius = np.sqrt(kx[:, None] ** 2 + ky[None, :] ** 2)
    with np.errstate(divide="ignore"):
        amp = np.where(radius > 0.0, radius ** (cfg.spectral_slope / 2.0), 0.0)
    if cfg.k_cutoff is not None:
        amp = np.where(radius > cfg.k_cutoff, 0.0, amp)
    return amp


def _one_field(rng: np.random.Generator, amp: np.ndarray) -> np.ndarray:
    noise = rng.standard_normal(amp.shape)
    shaped = np.fft.ifft2(np.fft.fft2(noise) * amp).real
    sd = shaped.std()
    if sd == 0.0:
        raise ValidationError("invalid-config", "spectral shaping wiped all energy")
    return shaped / sd


def synth_grf(
    cfg: SynthConfig,
    grid: GridSpec | None = None,
    dt: int = 3600,
    t0: int = 0,
) -> FieldSeries:
    """Generate ``cfg.count`` velocity samples with the configured spectrum."""
    if grid is None:
        grid = era5_like_grid(cfg.rows, cfg.cols)
    elif grid.shape != (cfg.rows, cfg.cols):
        raise ValidationError("shape-mismatch", "grid does not match config dims")
    rng = np.random.default_rng(cfg.seed)
    amp = _radial_amplitude(cfg)
    samples = []
    for i in range(cfg.count):
        u = _one_field(rng, amp)
        v = _one_field(rng, amp)
        samples.append(
            VelocitySample(Field2D(grid, u), Field2D(grid, v), t0 + i * dt)
        )
    return FieldSeries(tuple(samples), dt)
