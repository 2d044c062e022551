"""Pixel-level fidelity metrics: PSNR, SSIM and MAE.

SSIM here is the global-statistics variant: one mean, one standard deviation
(sample-normalized, ``1/(N-1)``) and one covariance per field, combined into
luminance, contrast and structure comparisons. Patch sizes in this domain are
small enough that a sliding window adds noise rather than information; a
windowed mode is available for cross-checks via the ``window`` argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .grid import field_values

__all__ = [
    "MetricConfig",
    "FidelityResult",
    "psnr",
    "ssim",
    "ssim_components",
    "mae",
    "compare_fields",
]


@dataclass(frozen=True)
class MetricConfig:
    """Constants of the pixel metrics.

    ``peak_L`` is the peak signal value (1.0 for [0, 1]-scaled channels);
    ``k1``/``k2`` are the SSIM stabilizer fractions; ``alpha``/``beta``/
    ``gamma`` weight the three SSIM comparisons.
    """

    peak_L: float = 1.0
    k1: float = 0.01
    k2: float = 0.03
    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0

    def __post_init__(self):
        if not self.peak_L > 0.0:
            raise ValidationError("invalid-config", "peak_L must be positive")
        if not (self.k1 > 0.0 and self.k2 > 0.0):
            raise ValidationError("invalid-config", "k1 and k2 must be positive")
        for e in (self.alpha, self.beta, self.gamma):
            if not math.isfinite(e):
                raise ValidationError("invalid-config", "exponents must be finite")


DEFAULT_CONFIG = MetricConfig()


@dataclass(frozen=True)
class FidelityResult:
    """PSNR (dB, may be +inf), SSIM, and MAE for one field pair."""

    psnr_db: float
    ssim: float
    mae: float


def _matched(f, fhat) -> tuple[np.ndarray, np.ndarray]:
    a = field_values(f)
    b = field_values(fhat)
    if a.shape != b.shape:
        raise ValidationError(
            "shape-mismatch", f"field shapes differ: {a.shape} vs {b.shape}"
        )
    fg = getattr(f, "grid", None)
    hg = getattr(fhat, "grid", None)
    if fg is not None and hg is not None and fg != hg:
        raise ValidationError("shape-mismatch", "fields live on different grids")
    return a, b


def psnr(f, fhat, cfg: MetricConfig = DEFAULT_CONFIG) -> float:
    """Peak signal-to-noise ratio in decibels; +inf for identical fields."""
    a, b = _matched(f, fhat)
    mse = float(np.mean((a - b) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(cfg.peak_L**2 / mse)


def mae(f, fhat) -> float:
    """Mean absolute error."""
    a, b = _matched(f, fhat)
    return float(np.mean(np.abs(a - b)))


def ssim_components(f, fhat, cfg: MetricConfig = DEFAULT_CONFIG) -> tuple[float, float, float]:
    """The (luminance, contrast, structure) comparison terms before exponents.

    Stabilizers are ``(k1*L)^2``, ``(k2*L)^2`` and ``(k2*L)^2 / 2``. The
    structure term can be negative for anti-correlated fields.
    """
    a, b = _matched(f, fhat)
    n = a.size
    if n < 2:
        raise ValidationError("degenerate-field", "SSIM needs at least 2 values")
    mu_a = float(a.mean())
    mu_b = float(b.mean())
    da = a - mu_a
    db = b - mu_b
    var_a = float((da * da).sum()) / (n - 1)
    var_b = float((db * db).sum()) / (n - 1)
    cov = float((da * db).sum()) / (n - 1)
    sd_a = math.sqrt(var_a)
    sd_b = math.sqrt(var_b)
    c1 = (cfg.k1 * cfg.peak_L) ** 2
    c2 = (cfg.k2 * cfg.peak_L) ** 2
    c3 = c2 / 2.0
    lum = (2.0 * mu_a * mu_b + c1) / (mu_a**2 + mu_b**2 + c1)
    con = (2.0 * sd_a * sd_b + c2) / (var_a + var_b + c2)
    struct = (cov + c3) / (sd_a * sd_b + c3)
    return lum, con, struct


def _powered(value: float, exponent: float) -> float:
    if exponent == 1.0:
        return value
    if value >= 0.0:
        return value**exponent
    if float(exponent).is_integer():
        return (-1.0) ** int(exponent) * (-value) ** exponent
    raise ValidationError(
        "negative-component",
        "non-integer SSIM exponent applied to a negative comparison term",
    )


def ssim(f, fhat, cfg: MetricConfig = DEFAULT_CONFIG, window: int | None = None) -> float:
    """Structural similarity; 1.0 for identical fields, negative for
    anti-correlated ones.

    ``window=None`` (the reported mode) uses global field statistics. An
    integer ``window`` computes the same expression over sliding square
    windows and averages the map.
    """
    if window is None:
        lum, con, struct = ssim_components(f, fhat, cfg)
        return _powered(lum, cfg.alpha) * _powered(con, cfg.beta) * _powered(struct, cfg.gamma)
    return _ssim_windowed(f, fhat, cfg, window)


def _ssim_windowed(f, fhat, cfg: MetricConfig, window: int) -> float:
    a, b = _matched(f, fhat)
    if window < 2 or window > min(a.shape):
        raise ValidationError("invalid-config", "window must fit inside the field")
    vals = []
    for i in range(a.shape[0] - window + 1):
        for j in range(a.shape[1] - window + 1):
            sub_a = a[i : i + window, j : j + window]
            sub_b = b[i : i + window, j : j + window]
            lum, con, struct = ssim_components(sub_a, sub_b, cfg)
            vals.append(
                _powered(lum, cfg.alpha)
                * _powered(con, cfg.beta)
                * _powered(struct, cfg.gamma)
            )
    return float(np.mean(vals))


def compare_fields(f, fhat, cfg: MetricConfig = DEFAULT_CONFIG) -> FidelityResult:
    """All three pixel metrics for one field pair."""
    return FidelityResult(psnr(f, fhat, cfg), ssim(f, fhat, cfg), mae(f, fhat))
