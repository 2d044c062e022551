"""Turbine power-curve model and cumulative wind-power estimation.

A power curve is a monotone speed-to-power table with cut-in / rated /
cut-out semantics: zero output below cut-in and at or above cut-out, linear
interpolation between table points, a flat plateau at rated power. The
speed-to-power map is non-linear, so long-term energy computed from a speed
time series differs from energy computed from the mean speed; preserving the
speed distribution is what matters downstream.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import DataIOError, ValidationError

__all__ = [
    "PowerCurve",
    "PowerSeries",
    "load_power_curve",
    "default_power_curve",
    "power_from_speed",
    "cumulative_power",
    "power_difference",
    "write_power_series_csv",
]

_BUNDLED_CURVE = "enercon_e92_2350.json"


@dataclass(frozen=True)
class PowerCurve:
    """Speed (m/s) to power (kW) table with cut-in/rated/cut-out semantics."""

    points: tuple[tuple[float, float], ...]
    cut_in: float
    rated_power: float
    cut_out: float
    name: str = ""
    hub_height: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(tuple(p) for p in self.points))
        if len(self.points) < 2:
            raise ValidationError("invalid-curve", "need at least 2 curve points")
        speeds = [s for s, _ in self.points]
        powers = [p for _, p in self.points]
        if any(b <= a for a, b in zip(speeds, speeds[1:])):
            raise ValidationError("invalid-curve", "speeds must strictly increase")
        if any(p < 0.0 for p in powers):
            raise ValidationError("invalid-curve", "powers must be nonnegative")
        if max(powers) != self.rated_power:
            raise ValidationError(
                "invalid-curve", "maximum table power must equal rated_power"
            )
        if not 0.0 <= self.cut_in < self.cut_out:
            raise ValidationError("invalid-curve", "need 0 <= cut_in < cut_out")
        if any(p != 0.0 for s, p in self.points if s < self.cut_in):
            raise ValidationError(
                "invalid-curve", "table points below cut-in must be zero"
            )


@dataclass(frozen=True)
class PowerSeries:
    """Per-step power and the running cumulative energy."""

    timestamps: np.ndarray
    power_kw: np.ndarray
    cumulative_kwh: np.ndarray


def _curve_from_json(obj: dict) -> PowerCurve:
    try:
        return PowerCurve(
            points=tuple((float(s), float(p)) for s, p in obj["points"]),
            cut_in=float(obj["cut_in_ms"]),
            rated_power=float(obj["rated_power_kw"]),
            cut_out=float(obj["cut_out_ms"]),
            name=str(obj.get("name", "")),
            hub_height=float(obj.get("hub_height_m", 0.0)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError("invalid-curve", f"malformed power-curve file: {exc}") from exc


def load_power_curve(path: str | Path) -> PowerCurve:
    """Load a power curve from its JSON file format."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataIOError("io", f"cannot read power curve {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError("invalid-curve", f"{path} is not valid JSON") from exc
    if not isinstance(obj, dict):
        raise ValidationError("invalid-curve", f"{path} is not a curve object")
    return _curve_from_json(obj)


def default_power_curve() -> PowerCurve:
    """The bundled Enercon E92/2350 curve (2350 kW rated, 98 m hub height)."""
    text = resources.files("windeval").joinpath(f"data/{_BUNDLED_CURVE}").read_text("utf-8")
    return _curve_from_json(json.loads(text))


def power_from_speed(speed, curve: PowerCurve):
    """Power output (kW) for a hub-height speed (m/s); scalar or array."""
    speeds = np.array([s for s, _ in curve.points])
    powers = np.array([p for _, p in curve.points])
    arr = np.asarray(speed, dtype=np.float64)
    out = np.interp(arr, speeds, powers)
    out = np.where((arr < curve.cut_in) | (arr >= curve.cut_out), 0.0, out)
    if np.ndim(speed) == 0:
        return float(out)
    return out


def cumulative_power(
    speeds: list[tuple[int, float]], curve: PowerCurve, dt_hours: float
) -> PowerSeries:
    """Per-step power and cumulative energy for a (timestamp, speed) series."""
    if not len(speeds):
        raise ValidationError("empty-samples", "speed series is empty")
    ts = np.array([t for t, _ in speeds], dtype=np.int64)
    if ts.size > 1:
        steps = np.diff(ts)
        if np.any(steps != steps[0]):
            raise ValidationError("non-uniform-timestep", "speed series must be uniform")
    vals = np.array([s for _, s in speeds], dtype=np.float64)
    kw = power_from_speed(vals, curve)
    return PowerSeries(ts, kw, np.cumsum(kw) * dt_hours)


def power_difference(pred: PowerSeries, ref: PowerSeries) -> np.ndarray:
    """Per-step cumulative energy difference, prediction minus reference."""
    if pred.timestamps.shape != ref.timestamps.shape or np.any(
        pred.timestamps != ref.timestamps
    ):
        raise ValidationError("time-misalignment", "power series timestamps differ")
    return pred.cumulative_kwh - ref.cumulative_kwh


def write_power_series_csv(path: str | Path, series: PowerSeries) -> None:
    """Export as CSV with header ``timestamp,power_kw,cumulative_kwh``."""
    lines = ["timestamp,power_kw,cumulative_kwh"]
    for t, p, c in zip(series.timestamps, series.power_kw, series.cumulative_kwh):
        lines.append(f"{int(t)},{float(p)!r},{float(c)!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
