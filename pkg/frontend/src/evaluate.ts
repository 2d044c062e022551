/** Dataset-level evaluation through the core CLI. */

import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { runCli } from "./cli.js";

export type PredSpec = string | string[] | Record<string, string | string[]>;

export interface EvaluateOptions {
  /** (lat, lon) pairs; without them the core samples one point from `seed`. */
  points?: Array<[number, number]>;
  melrMode?: "mean" | "sum";
  workers?: number;
  perSample?: boolean;
  /** Power-curve JSON path; defaults to the core's bundled E92/2350. */
  curve?: string;
  seed?: number;
}

export interface MetricRow {
  model: string;
  psnr_db: number | "inf";
  ssim: number;
  mae: number;
  melr: number;
  wasserstein: number | null;
  [key: string]: unknown;
}

export interface PointResult {
  model: string;
  lat: number;
  lon: number;
  wasserstein: number;
  final_cumulative_error_kwh: number;
}

export interface EvalReportDoc {
  schema: string;
  metadata: Record<string, unknown>;
  rows: MetricRow[];
  per_point: PointResult[];
  samples?: Array<Record<string, unknown>>;
}

export interface EvaluateResult {
  report: EvalReportDoc;
  /** The report exactly as the CLI wrote it; byte-identical to a direct run. */
  json: Buffer;
}

function predArgs(preds: PredSpec): string[] {
  const args: string[] = [];
  const push = (spec: string) => args.push("--pred", spec);
  if (typeof preds === "string") {
    push(preds);
  } else if (Array.isArray(preds)) {
    for (const p of preds) push(p);
  } else {
    for (const [name, paths] of Object.entries(preds)) {
      for (const p of Array.isArray(paths) ? paths : [paths]) {
        push(`${name}=${p}`);
      }
    }
  }
  return args;
}

export function evaluateArgs(
  preds: PredSpec,
  ref: string,
  outFile: string,
  options: EvaluateOptions = {},
): string[] {
  const args = ["evaluate", ...predArgs(preds), "--ref", ref, "--format", "json"];
  for (const [lat, lon] of options.points ?? []) {
    args.push("--point", `${lat},${lon}`);
  }
  if (options.melrMode) args.push("--melr-mode", options.melrMode);
  if (options.workers) args.push("--workers", String(options.workers));
  if (options.perSample) args.push("--per-sample");
  if (options.curve) args.push("--curve", options.curve);
  if (options.seed !== undefined) args.push("--seed", String(options.seed));
  args.push("--out", outFile);
  return args;
}

/** Score prediction datasets against a reference dataset. */
export function bindEvaluate(
  preds: PredSpec,
  ref: string,
  options: EvaluateOptions = {},
): EvaluateResult {
  const work = mkdtempSync(join(tmpdir(), "windeval-eval-"));
  try {
    const outFile = join(work, "report.json");
    runCli(evaluateArgs(preds, ref, outFile, options));
    const json = readFileSync(outFile);
    return { report: JSON.parse(json.toString("utf-8")) as EvalReportDoc, json };
  } finally {
    rmSync(work, { recursive: true, force: true });
  }
}
