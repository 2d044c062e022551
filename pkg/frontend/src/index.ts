export { IoError, ValidationError, WindEvalError } from "./errors.js";
export type {
  BoundField,
  BoundSample,
  ChannelStats,
  Dataset,
  GridDescriptor,
} from "./wfb.js";
export { loadDataset, loadManifest, readSampleFile } from "./wfb.js";
export type {
  EvalReportDoc,
  EvaluateOptions,
  EvaluateResult,
  MetricRow,
  PointResult,
  PredSpec,
} from "./evaluate.js";
export { bindEvaluate } from "./evaluate.js";
export type { MetricsOptions, MetricsRecord, PointMetrics } from "./metrics.js";
export { bindMetrics } from "./metrics.js";
export { cliCommand, runCli } from "./cli.js";
