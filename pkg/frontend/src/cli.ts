/**
 * Invocation of the windeval core CLI.
 *
 * The command defaults to `windeval` on PATH and can be overridden with the
 * WINDEVAL_CLI environment variable (e.g. "python3 -m windeval"). Exit code
 * 2 surfaces as ValidationError, 3 as IoError, carrying the core's stable
 * error code parsed from stderr.
 */

import { spawnSync } from "node:child_process";

import { IoError, ValidationError, WindEvalError, parseErrorCode } from "./errors.js";

export function cliCommand(): string[] {
  const override = process.env.WINDEVAL_CLI;
  if (override && override.trim().length > 0) {
    return override.trim().split(/\s+/);
  }
  return ["windeval"];
}

export function runCli(args: string[]): string {
  const [command, ...prefix] = cliCommand();
  const result = spawnSync(command, [...prefix, ...args], {
    encoding: "utf-8",
    maxBuffer: 256 * 1024 * 1024,
  });
  if (result.error) {
    throw new IoError("io", `cannot run ${command}: ${result.error.message}`);
  }
  const stderr = result.stderr ?? "";
  if (result.status === 2) {
    throw new ValidationError(parseErrorCode(stderr, "validation"), stderr.trim());
  }
  if (result.status === 3) {
    throw new IoError(parseErrorCode(stderr, "io"), stderr.trim());
  }
  if (result.status !== 0) {
    throw new WindEvalError(
      "cli-failure",
      `windeval exited with ${result.status}: ${stderr.trim()}`,
    );
  }
  return result.stdout ?? "";
}
