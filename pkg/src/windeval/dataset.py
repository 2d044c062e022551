"""Dataset directory I/O.

A dataset is a directory holding ``manifest.json`` plus one binary file per
velocity sample. The sample format "WFB1" is: magic bytes ``57 46 42 31``,
little-endian u32 rows, u32 cols, u32 channels (always 2), then
``channels * rows * cols`` little-endian 32-bit floats, u channel first,
row-major.
"""

from __future__ import annotations

import json
import struct
from dataclasses import asdict
from pathlib import Path

import numpy as np

from .errors import DataIOError, ValidationError
from .grid import Field2D, FieldSeries, GridSpec, NormStats, VelocitySample

__all__ = [
    "MAGIC",
    "MANIFEST_NAME",
    "write_sample",
    "read_sample",
    "write_dataset",
    "load_dataset",
    "load_manifest",
    "write_point_series_csv",
]

MAGIC = b"WFB1"
MANIFEST_NAME = "manifest.json"
_HEADER = struct.Struct("<III")  # rows, cols, channels


def write_sample(path: str | Path, sample: VelocitySample) -> None:
    """Write one velocity sample as a WFB1 file (values stored as float32)."""
    rows, cols = sample.grid.shape
    payload = [
        MAGIC,
        _HEADER.pack(rows, cols, 2),
        np.ascontiguousarray(sample.u.values, dtype="<f4").tobytes(),
        np.ascontiguousarray(sample.v.values, dtype="<f4").tobytes(),
    ]
    Path(path).write_bytes(b"".join(payload))


def read_sample(path: str | Path) -> tuple[int, int, np.ndarray, np.ndarray]:
    """Read a WFB1 file; returns (rows, cols, u, v) with float64 arrays."""
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise DataIOError("io", f"cannot read sample file {path}: {exc}") from exc
    if len(raw) < 4 + _HEADER.size or raw[:4] != MAGIC:
        raise DataIOError("io", f"{path} is not a WFB1 sample file")
    rows, cols, channels = _HEADER.unpack_from(raw, 4)
    if channels != 2:
        raise DataIOError("io", f"{path}: expected 2 channels, got {channels}")
    expect = 4 + _HEADER.size + 2 * rows * cols * 4
    if len(raw) != expect:
        raise DataIOError("io", f"{path}: truncated payload ({len(raw)} != {expect})")
    flat = np.frombuffer(raw, dtype="<f4", offset=4 + _HEADER.size)
    u = flat[: rows * cols].reshape(rows, cols).astype(np.float64)
    v = flat[rows * cols :].reshape(rows, cols).astype(np.float64)
    return rows, cols, u, v


def _grid_to_json(grid: GridSpec) -> dict:
    return asdict(grid)


def _grid_from_json(obj: dict) -> GridSpec:
    try:
        return GridSpec(
            rows=int(obj["rows"]),
            cols=int(obj["cols"]),
            lat_origin=float(obj["lat_origin"]),
            lon_origin=float(obj["lon_origin"]),
            lat_step=float(obj["lat_step"]),
            lon_step=float(obj["lon_step"]),
            spacing_s=float(obj["spacing_s"]),
        )
    except KeyError as exc:
        raise DataIOError("io", f"manifest grid is missing key {exc}") from exc


def _stats_to_json(stats: NormStats | None) -> dict | None:
    return asdict(stats) if stats is not None else None


def _stats_from_json(obj: dict | None) -> NormStats | None:
    if obj is None:
        return None
    try:
        return NormStats(
            u_min=float(obj["u_min"]),
            u_max=float(obj["u_max"]),
            u_mean=float(obj["u_mean"]),
            v_min=float(obj["v_min"]),
            v_max=float(obj["v_max"]),
            v_mean=float(obj["v_mean"]),
        )
    except KeyError as exc:
        raise DataIOError("io", f"manifest stats are missing key {exc}") from exc


def write_dataset(
    directory: str | Path, series: FieldSeries, stats: NormStats | None = None
) -> Path:
    """Write a series as a dataset directory; returns the directory path."""
    if len(series) == 0:
        raise ValidationError("empty-series", "refusing to write an empty dataset")
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    entries = []
    for idx, sample in enumerate(series.samples):
        name = f"s{idx:06d}.wfb"
        write_sample(directory / name, sample)
        entries.append({"file": name, "timestamp": sample.timestamp})
    manifest = {
        "schema": "windeval-dataset-v1",
        "grid": _grid_to_json(series.grid),
        "dt": series.dt,
        "stats": _stats_to_json(stats),
        "samples": entries,
    }
    text = json.dumps(manifest, sort_keys=True, indent=2) + "\n"
    (directory / MANIFEST_NAME).write_text(text, encoding="utf-8")
    return directory


def load_manifest(directory: str | Path) -> dict:
    path = Path(directory) / MANIFEST_NAME
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataIOError("io", f"cannot read {path}: {exc}") from exc
    try:
        manifest = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataIOError("io", f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(manifest, dict) or "samples" not in manifest:
        raise DataIOError("io", f"{path} is not a dataset manifest")
    return manifest


def load_dataset(directory: str | Path) -> tuple[FieldSeries, NormStats | None]:
    """Load a dataset directory; samples are returned sorted by timestamp."""
    directory = Path(directory)
    manifest = load_manifest(directory)
    grid = _grid_from_json(manifest.get("grid", {}))
    stats = _stats_from_json(manifest.get("stats"))
    dt = int(manifest.get("dt", 0))
    samples = []
    for entry in sorted(manifest["samples"], key=lambda e: int(e["timestamp"])):
        rows, cols, u, v = read_sample(directory / entry["file"])
        if (rows, cols) != grid.shape:
            raise DataIOError(
                "io",
                f"{entry['file']}: sample shape ({rows}, {cols}) does not match "
                f"manifest grid {grid.shape}",
            )
        samples.append(
            VelocitySample(Field2D(grid, u), Field2D(grid, v), int(entry["timestamp"]))
        )
    return FieldSeries(tuple(samples), dt), stats


def write_point_series_csv(
    path: str | Path, points: list[tuple[int, float]]
) -> None:
    """Export a point speed series as CSV with header ``timestamp,speed_ms``."""
    lines = ["timestamp,speed_ms"]
    lines += [f"{ts},{speed!r}" for ts, speed in points]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
