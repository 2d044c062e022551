"""Command-line interface.

Subcommands: ``synth``, ``coarsen``, ``upsample``, ``build-task``,
``evaluate``, ``power``, ``report``. Exit codes: 0 success, 2 validation
error, 3 I/O error. All randomness flows from ``--seed``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .dataset import (
    load_dataset,
    load_manifest,
    write_dataset,
    write_point_series_csv,
)
from .distribution import default_speed_grid, kde, scott_bandwidth, write_density_csv
from .errors import DataIOError, ValidationError, WindEvalError
from .grid import FieldSeries, VelocitySample, extract_point_series, wind_speed
from .harness import build_task, evaluate
from .power import (
    cumulative_power,
    default_power_curve,
    load_power_curve,
    write_power_series_csv,
)
from .report import emit_report, report_from_json
from .resample import (
    bicubic_upsample,
    bilinear_upsample,
    decimate,
    nearest_regrid,
    nearest_upsample,
)
from .spectral import Rapsd, rapsd, write_rapsd_csv
from .synth import SynthConfig, synth_grf

_UPSAMPLERS = {
    "bicubic": bicubic_upsample,
    "bilinear": bilinear_upsample,
    "nearest": nearest_upsample,
}


def _parse_point(text: str) -> tuple[float, float]:
    try:
        lat_s, lon_s = text.split(",")
        return float(lat_s), float(lon_s)
    except ValueError:
        raise ValidationError(
            "invalid-config", f"--point expects LAT,LON, got {text!r}"
        ) from None


def _parse_pred(text: str) -> tuple[str, str]:
    if "=" in text:
        name, path = text.split("=", 1)
        return name, path
    return Path(text).name, text


def _map_series(series: FieldSeries, fn) -> FieldSeries:
    samples = tuple(
        VelocitySample(fn(s.u), fn(s.v), s.timestamp) for s in series.samples
    )
    return FieldSeries(samples, series.dt)


def _cmd_synth(args) -> int:
    cfg = SynthConfig(
        rows=args.rows,
        cols=args.cols,
        spectral_slope=args.slope,
        seed=args.seed,
        count=args.count,
        k_cutoff=args.k_cutoff,
    )
    series = synth_grf(cfg, dt=args.dt)
    from .grid import compute_stats

    write_dataset(args.out, series, compute_stats(series))
    print(f"wrote {args.count} samples to {args.out}")
    return 0


def _cmd_coarsen(args) -> int:
    series, stats = load_dataset(args.input)
    if args.mode == "decimate":
        out = _map_series(series, lambda f: decimate(f, args.factor))
    else:
        if not args.target:
            raise ValidationError("invalid-config", "--mode nearest needs --target")
        target_manifest = load_manifest(args.target)
        from .dataset import _grid_from_json

        target = _grid_from_json(target_manifest.get("grid", {}))
        out = _map_series(series, lambda f: nearest_regrid(f, target))
    write_dataset(args.out, out, stats)
    print(f"wrote {len(out)} samples to {args.out}")
    return 0


def _cmd_upsample(args) -> int:
    series, stats = load_dataset(args.input)
    fn = _UPSAMPLERS[args.method]
    out = _map_series(series, lambda f: fn(f, args.factor))
    write_dataset(args.out, out, stats)
    print(f"wrote {len(out)} samples to {args.out}")
    return 0


def _cmd_build_task(args) -> int:
    lr, hr = build_task(
        src=args.src,
        task=args.task,
        out_lr=args.out_lr,
        out_hr=args.out_hr,
        aux=args.aux,
        factor=args.factor,
    )
    print(f"wrote low-resolution dataset to {lr}")
    print(f"wrote high-resolution dataset to {hr}")
    return 0


def _random_point(ref_path: str, seed: int) -> tuple[float, float]:
    manifest = load_manifest(ref_path)
    from .dataset import _grid_from_json

    grid = _grid_from_json(manifest.get("grid", {}))
    rng = np.random.default_rng(seed)
    i = int(rng.integers(grid.rows))
    j = int(rng.integers(grid.cols))
    return grid.lat_of(i), grid.lon_of(j)


def _cmd_evaluate(args) -> int:
    preds: dict[str, list[str]] = {}
    for spec in args.pred:
        name, path = _parse_pred(spec)
        preds.setdefault(name, []).append(path)
    points = [_parse_point(p) for p in args.point] if args.point else []
    if not points:
        points = [_random_point(args.ref, args.seed)]
    curve = load_power_curve(args.curve) if args.curve else default_power_curve()
    report = evaluate(
        preds,
        args.ref,
        points=points,
        melr_mode=args.melr_mode,
        curve=curve,
        workers=args.workers,
        per_sample=args.per_sample,
    )
    payload = emit_report(report, args.format)
    if args.out:
        Path(args.out).write_bytes(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))
    if args.rapsd_out:
        _dump_rapsd(args.rapsd_out, preds, args.ref)
    if args.density_out:
        _dump_density(args.density_out, preds, args.ref, points)
    return 0


def _mean_rapsd(path: str) -> Rapsd:
    series, _ = load_dataset(path)
    spectra = [rapsd(wind_speed(s)) for s in series.samples]
    energies = np.mean([sp.energies for sp in spectra], axis=0)
    first = spectra[0]
    return Rapsd(
        wavenumbers=first.wavenumbers,
        energies=energies,
        counts=first.counts,
        wavelengths=first.wavelengths,
        discarded=first.discarded,
    )


def _dump_rapsd(out_dir: str, preds: dict[str, list[str]], ref: str) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_rapsd_csv(out / "reference.csv", _mean_rapsd(ref))
    for name, paths in preds.items():
        for idx, path in enumerate(paths):
            suffix = f"_{idx}" if len(paths) > 1 else ""
            write_rapsd_csv(out / f"{name}{suffix}.csv", _mean_rapsd(path))


def _point_label(lat: float, lon: float) -> str:
    return f"{lat:.4f}N_{lon:.4f}E".replace("-", "m")


def _dump_density(out_dir, preds, ref, points) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    datasets = {"reference": ref}
    for name, paths in preds.items():
        for idx, path in enumerate(paths):
            datasets[f"{name}_{idx}" if len(paths) > 1 else name] = path
    for label, path in datasets.items():
        series, _ = load_dataset(path)
        for lat, lon in points:
            speeds = [s for _, s in extract_point_series(series, lat, lon)]
            h = scott_bandwidth(speeds)
            grid = default_speed_grid(speeds, h)
            write_density_csv(
                out / f"{label}_{_point_label(lat, lon)}.csv", kde(speeds, grid, h)
            )


def _cmd_power(args) -> int:
    series, _ = load_dataset(args.input)
    lat, lon = _parse_point(args.point)
    speeds = extract_point_series(series, lat, lon)
    curve = load_power_curve(args.curve) if args.curve else default_power_curve()
    power_series = cumulative_power(speeds, curve, series.dt / 3600.0)
    write_power_series_csv(args.out, power_series)
    if args.speeds_out:
        write_point_series_csv(args.speeds_out, speeds)
    total = power_series.cumulative_kwh[-1]
    print(f"{curve.name}: cumulative energy {total:.1f} kWh over {len(speeds)} steps")
    return 0


def _cmd_report(args) -> int:
    try:
        data = Path(args.input).read_bytes()
    except OSError as exc:
        raise DataIOError("io", f"cannot read report {args.input}: {exc}") from exc
    report = report_from_json(data)
    payload = emit_report(report, args.format)
    if args.out:
        Path(args.out).write_bytes(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="windeval",
        description="Evaluate wind-field downscaling and super-resolution outputs.",
    )
    parser.add_argument("--version", action="version", version=f"windeval {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic random-field dataset")
    p.add_argument("--out", required=True)
    p.add_argument("--rows", type=int, default=64)
    p.add_argument("--cols", type=int, default=64)
    p.add_argument("--slope", type=float, default=-3.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=16)
    p.add_argument("--dt", type=int, default=3600)
    p.add_argument("--k-cutoff", type=float, default=None)
    p.set_defaults(fn=_cmd_synth)

    p = sub.add_parser("coarsen", help="decimate or regrid a dataset")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--mode", choices=["decimate", "nearest"], default="decimate")
    p.add_argument("--factor", type=int, default=4)
    p.add_argument("--target", help="dataset whose grid to regrid onto (nearest mode)")
    p.set_defaults(fn=_cmd_coarsen)

    p = sub.add_parser("upsample", help="upsample a dataset")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--method", choices=sorted(_UPSAMPLERS), default="bicubic")
    p.add_argument("--factor", type=int, default=4)
    p.set_defaults(fn=_cmd_upsample)

    p = sub.add_parser("build-task", help="build a task's LR/HR dataset pair")
    p.add_argument("--task", choices=["sr", "super_resolution", "dsc", "downscaling"], required=True)
    p.add_argument("--src", required=True)
    p.add_argument("--aux", help="high-resolution target dataset (downscaling)")
    p.add_argument("--out-lr", required=True)
    p.add_argument("--out-hr", required=True)
    p.add_argument("--factor", type=int, default=4)
    p.set_defaults(fn=_cmd_build_task)

    p = sub.add_parser("evaluate", help="score predictions against a reference")
    p.add_argument("--pred", action="append", required=True, metavar="[NAME=]PATH",
                   help="prediction dataset; repeat for more models or samples")
    p.add_argument("--ref", required=True)
    p.add_argument("--point", action="append", metavar="LAT,LON")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for sampling a grid point when --point is absent")
    p.add_argument("--melr-mode", choices=["mean", "sum"], default="mean")
    p.add_argument("--format", choices=["json", "csv", "md", "markdown"], default="json")
    p.add_argument("--per-sample", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--curve", help="power-curve JSON (default: bundled E92/2350)")
    p.add_argument("--out")
    p.add_argument("--rapsd-out", help="directory for mean radial-spectrum CSVs")
    p.add_argument("--density-out", help="directory for per-point KDE CSVs")
    p.set_defaults(fn=_cmd_evaluate)

    p = sub.add_parser("power", help="cumulative power series at a grid point")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--point", required=True, metavar="LAT,LON")
    p.add_argument("--curve")
    p.add_argument("--out", required=True)
    p.add_argument("--speeds-out", help="also export the speed series CSV")
    p.set_defaults(fn=_cmd_power)

    p = sub.add_parser("report", help="re-render a JSON report")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--format", choices=["json", "csv", "md", "markdown"], default="md")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DataIOError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except WindEvalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
