/**
 * Metric computation for in-memory field pairs.
 *
 * The pair is staged as two single-sample datasets in a temporary directory
 * and scored by the core CLI, so every number is produced by the one
 * canonical implementation. The temporary datasets are an internal transport
 * detail; dataset writing is not part of the public API.
 */

import { mkdirSync, mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { runCli } from "./cli.js";
import { ValidationError } from "./errors.js";
import { bindEvaluate, EvalReportDoc, EvaluateOptions } from "./evaluate.js";
import { BoundSample, encodeSample } from "./wfb.js";

export interface MetricsOptions {
  points?: Array<[number, number]>;
  melrMode?: "mean" | "sum";
  curve?: string;
  seed?: number;
}

export interface PointMetrics {
  lat: number;
  lon: number;
  wasserstein: number;
  final_cumulative_error_kwh: number;
}

export interface MetricsRecord {
  /** Decibels; Number.POSITIVE_INFINITY for identical fields. */
  psnr_db: number;
  ssim: number;
  mae: number;
  melr: number;
  /** Mean over the evaluated points. */
  wasserstein: number | null;
  perPoint: PointMetrics[];
  /** The full report document the core produced. */
  report: EvalReportDoc;
}

function checkSample(label: string, sample: BoundSample): void {
  for (const channel of [sample.u, sample.v] as const) {
    const { rows, cols } = channel.grid;
    if (channel.values.length !== rows * cols) {
      throw new ValidationError(
        "shape-mismatch",
        `${label}: buffer has ${channel.values.length} values, grid is ${rows}x${cols}`,
      );
    }
  }
  if (
    sample.u.grid.rows !== sample.v.grid.rows ||
    sample.u.grid.cols !== sample.v.grid.cols
  ) {
    throw new ValidationError("shape-mismatch", `${label}: u and v grids differ`);
  }
}

function stageDataset(root: string, name: string, sample: BoundSample): string {
  const dir = join(root, name);
  mkdirSync(dir);
  writeFileSync(join(dir, "s000000.wfb"), encodeSample(sample));
  const manifest = {
    schema: "windeval-dataset-v1",
    grid: sample.u.grid,
    dt: 3600,
    stats: null,
    samples: [{ file: "s000000.wfb", timestamp: 0 }],
  };
  writeFileSync(join(dir, "manifest.json"), JSON.stringify(manifest, null, 2) + "\n");
  return dir;
}

function asNumber(value: number | "inf"): number {
  return value === "inf" ? Number.POSITIVE_INFINITY : value;
}

/** Score one prediction sample against one reference sample. */
export function bindMetrics(
  pred: BoundSample,
  ref: BoundSample,
  options: MetricsOptions = {},
): MetricsRecord {
  checkSample("pred", pred);
  checkSample("ref", ref);
  if (pred.u.grid.rows !== ref.u.grid.rows || pred.u.grid.cols !== ref.u.grid.cols) {
    throw new ValidationError(
      "shape-mismatch",
      `prediction is ${pred.u.grid.rows}x${pred.u.grid.cols}, ` +
        `reference is ${ref.u.grid.rows}x${ref.u.grid.cols}`,
    );
  }
  const work = mkdtempSync(join(tmpdir(), "windeval-metrics-"));
  try {
    const predDir = stageDataset(work, "pred", pred);
    const refDir = stageDataset(work, "ref", ref);
    const evalOptions: EvaluateOptions = {
      points: options.points,
      melrMode: options.melrMode,
      curve: options.curve,
      seed: options.seed ?? 0,
    };
    const { report } = bindEvaluate({ metrics: predDir }, refDir, evalOptions);
    const row = report.rows[0];
    return {
      psnr_db: asNumber(row.psnr_db),
      ssim: row.ssim,
      mae: row.mae,
      melr: row.melr,
      wasserstein: row.wasserstein,
      perPoint: report.per_point.map(({ lat, lon, wasserstein, final_cumulative_error_kwh }) => ({
        lat,
        lon,
        wasserstein,
        final_cumulative_error_kwh,
      })),
      report,
    };
  } finally {
    rmSync(work, { recursive: true, force: true });
  }
}

/** Expose the CLI run for power users; mirrors `windeval <args>`. */
export { runCli };
