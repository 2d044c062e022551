"""Spatial spectra: 2D power spectrum, radially averaged PSD, and the
log-energy-ratio score.

The 2D power spectrum uses the DFT with ``1/(m*n)`` normalization, so a
constant field carries all its power at the DC cell and Parseval's identity
reads ``sum(power) == mean(f**2)``. The radial average assigns each non-DC
spectral cell to the integer bin ``round(sqrt(kx^2 + ky^2))`` built from
signed integer frequencies in cycles per grid; bins run from 1 to
``min(m, n) // 2`` and anisotropic high-frequency corners beyond that radius
are discarded (their count is reported for bookkeeping).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .grid import field_values

__all__ = [
    "Spectrum2D",
    "Rapsd",
    "power_spectrum_2d",
    "rapsd",
    "melr",
    "spectral_log_ratio",
    "write_rapsd_csv",
    "ENERGY_FLOOR",
]

# Bins whose energy falls below this floor are excluded from log ratios.
ENERGY_FLOOR = 1e-20


@dataclass(frozen=True)
class Spectrum2D:
    """Nonnegative spectral power on the DFT frequency lattice, DC at (0, 0)."""

    power: np.ndarray

    def __post_init__(self):
        power = np.asarray(self.power, dtype=np.float64)
        power.flags.writeable = False
        object.__setattr__(self, "power", power)

    @property
    def dims(self) -> tuple[int, int]:
        return self.power.shape


@dataclass(frozen=True)
class Rapsd:
    """Radially averaged power spectral density.

    ``wavenumbers`` are the integer bins 1..k_max, ``energies`` the mean
    spectral power per bin, ``counts`` the number of spectral cells per bin,
    ``wavelengths`` the radial wavelengths ``spacing_s / k`` in km, and
    ``discarded`` the number of high-frequency corner cells beyond k_max.
    """

    wavenumbers: np.ndarray
    energies: np.ndarray
    counts: np.ndarray
    wavelengths: np.ndarray
    discarded: int


def power_spectrum_2d(field) -> Spectrum2D:
    """2D spectral power ``|FFT(f) / (m*n)|^2``."""
    vals = field_values(field)
    m, n = vals.shape
    coeff = np.fft.fft2(vals) / (m * n)
    return Spectrum2D(np.abs(coeff) ** 2)


def rapsd(field, spacing_s: float | None = None) -> Rapsd:
    """Radial average of the 2D power spectrum over direction.

    ``spacing_s`` defaults to the field's grid spacing (1.0 for bare arrays).
    """
    vals = field_values(field)
    m, n = vals.shape
    if m < 4 or n < 4:
        raise ValidationError("field-too-small", "radial spectrum needs at least 4x4")
    if spacing_s is None:
        grid = getattr(field, "grid", None)
        spacing_s = grid.spacing_s if grid is not None else 1.0

    power = power_spectrum_2d(vals).power
    kx = np.fft.fftfreq(m) * m  # signed integer cycles per grid, [-m/2, m/2)
    ky = np.fft.fftfreq(n) * n
    radius = np.sqrt(kx[:, None] ** 2 + ky[None, :] ** 2)
    bins = np.rint(radius).astype(int)

    k_max = min(m, n) // 2
    flat_bins = bins.ravel()
    in_range = flat_bins <= k_max
    counts = np.bincount(flat_bins[in_range], minlength=k_max + 1)
    sums = np.bincount(
        flat_bins[in_range], weights=power.ravel()[in_range], minlength=k_max + 1
    )
    ks = np.arange(1, k_max + 1)
    energies = sums[1:] / counts[1:]  # every bin 1..k_max holds the axis cells
    discarded = int(m * n - 1 - counts[1:].sum())
    return Rapsd(
        wavenumbers=ks,
        energies=energies,
        counts=counts[1:],
        wavelengths=spacing_s / ks,
        discarded=discarded,
    )


def spectral_log_ratio(pred, ref) -> tuple[np.ndarray, np.ndarray, int]:
    """Per-bin ``log(E_pred(k) / E_ref(k))`` on the shared radial bins.

    Returns ``(wavenumbers, log_ratios, skipped)`` where bins with energy
    below :data:`ENERGY_FLOOR` on either side are dropped and counted in
    ``skipped``.
    """
    a = field_values(pred)
    b = field_values(ref)
    if a.shape != b.shape:
        raise ValidationError(
            "shape-mismatch", f"field shapes differ: {a.shape} vs {b.shape}"
        )
    ra = rapsd(a)
    rb = rapsd(b)
    valid = (ra.energies > ENERGY_FLOOR) & (rb.energies > ENERGY_FLOOR)
    skipped = int((~valid).sum())
    ks = ra.wavenumbers[valid]
    ratios = np.log(ra.energies[valid] / rb.energies[valid])
    return ks, ratios, skipped


def melr(pred, ref, mode: str = "mean", base: float | None = None) -> float:
    """Accumulated absolute log ratio of radial energies.

    ``mode="mean"`` (the reported default) averages ``|log(E_pred/E_ref)|``
    over valid bins; ``mode="sum"`` accumulates it. The log is natural;
    ``base`` rescales it for cross-checks.
    """
    if mode not in ("mean", "sum"):
        raise ValidationError("invalid-config", f"unknown melr mode {mode!r}")
    if base is not None and (base <= 0.0 or base == 1.0):
        raise ValidationError("invalid-config", "log base must be positive and != 1")
    _, ratios, _ = spectral_log_ratio(pred, ref)
    if ratios.size == 0:
        raise ValidationError("empty-spectrum", "no radial bins with usable energy")
    total = float(np.abs(ratios).sum())
    if base is not None:
        total /= abs(np.log(base))
    return total / ratios.size if mode == "mean" else total


def write_rapsd_csv(path: str | Path, spectrum: Rapsd) -> None:
    """Export as CSV with header ``k,wavelength_km,energy,count``."""
    lines = ["k,wavelength_km,energy,count"]
    for k, lam, e, c in zip(
        spectrum.wavenumbers, spectrum.wavelengths, spectrum.energies, spectrum.counts
    ):
        lines.append(f"{int(k)},{float(lam)!r},{float(e)!r},{int(c)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
