/** Typed errors mirroring the core's machine-readable error codes. */

export class WindEvalError extends Error {
  readonly code: string;

  constructor(code: string, message: string) {
    super(message);
    this.name = new.target.name;
    this.code = code;
  }
}

/** Invalid inputs or violated preconditions (core CLI exit code 2). */
export class ValidationError extends WindEvalError {}

/** Missing or malformed files (core CLI exit code 3). */
export class IoError extends WindEvalError {}

const CODE_PATTERN = /\[([a-z0-9-]+)\]/;

/** Extract the stable error code from a core CLI stderr line. */
export function parseErrorCode(stderr: string, fallback: string): string {
  const match = CODE_PATTERN.exec(stderr);
  return match ? match[1] : fallback;
}
