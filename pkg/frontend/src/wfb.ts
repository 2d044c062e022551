/**
 * WFB1 sample files and dataset manifests.
 *
 * Layout of a sample file: magic bytes `57 46 42 31` ("WFB1"), little-endian
 * u32 rows, u32 cols, u32 channels (always 2), then channels*rows*cols
 * little-endian float32 values, u channel first, row-major. Reading is
 * zero-copy (a Float32Array view over the file buffer) whenever the payload
 * is 4-byte aligned and the platform is little-endian, and falls back to a
 * copy otherwise.
 */

import { readFileSync } from "node:fs";
import { endianness } from "node:os";
import { join } from "node:path";

import { IoError } from "./errors.js";

const MAGIC = 0x31424657; // "WFB1" read as little-endian u32
const HEADER_BYTES = 16;

/** Grid geometry record, mirroring the manifest's `grid` object. */
export interface GridDescriptor {
  rows: number;
  cols: number;
  lat_origin: number;
  lon_origin: number;
  lat_step: number;
  lon_step: number;
  spacing_s: number;
}

/** Per-channel normalization stats, mirroring the manifest's `stats`. */
export interface ChannelStats {
  u_min: number;
  u_max: number;
  u_mean: number;
  v_min: number;
  v_max: number;
  v_mean: number;
}

/** One scalar field: a grid descriptor plus a row-major float32 buffer. */
export interface BoundField {
  grid: GridDescriptor;
  values: Float32Array;
}

/** A paired (u, v) velocity sample. */
export interface BoundSample {
  u: BoundField;
  v: BoundField;
  timestamp: number;
}

export interface Dataset {
  grid: GridDescriptor;
  dt: number;
  stats: ChannelStats | null;
  samples: BoundSample[];
}

function viewFloats(buf: Buffer, byteOffset: number, length: number): Float32Array {
  const absolute = buf.byteOffset + byteOffset;
  if (endianness() === "LE" && absolute % 4 === 0) {
    return new Float32Array(buf.buffer, absolute, length);
  }
  const out = new Float32Array(length);
  for (let i = 0; i < length; i++) {
    out[i] = buf.readFloatLE(byteOffset + 4 * i);
  }
  return out;
}

/** Read one WFB1 file; `grid` fills in the geometry of the returned fields. */
export function readSampleFile(
  path: string,
  grid: GridDescriptor,
  timestamp = 0,
): BoundSample {
  let buf: Buffer;
  try {
    buf = readFileSync(path);
  } catch (err) {
    throw new IoError("io", `cannot read sample file ${path}: ${String(err)}`);
  }
  if (buf.length < HEADER_BYTES || buf.readUInt32LE(0) !== MAGIC) {
    throw new IoError("io", `${path} is not a WFB1 sample file`);
  }
  const rows = buf.readUInt32LE(4);
  const cols = buf.readUInt32LE(8);
  const channels = buf.readUInt32LE(12);
  if (channels !== 2) {
    throw new IoError("io", `${path}: expected 2 channels, got ${channels}`);
  }
  const cells = rows * cols;
  if (buf.length !== HEADER_BYTES + 2 * 4 * cells) {
    throw new IoError("io", `${path}: truncated payload`);
  }
  if (rows !== grid.rows || cols !== grid.cols) {
    throw new IoError(
      "io",
      `${path}: sample is ${rows}x${cols}, manifest grid is ${grid.rows}x${grid.cols}`,
    );
  }
  return {
    u: { grid, values: viewFloats(buf, HEADER_BYTES, cells) },
    v: { grid, values: viewFloats(buf, HEADER_BYTES + 4 * cells, cells) },
    timestamp,
  };
}

interface ManifestEntry {
  file: string;
  timestamp: number;
}

interface Manifest {
  grid: GridDescriptor;
  dt: number;
  stats: ChannelStats | null;
  samples: ManifestEntry[];
}

export function loadManifest(directory: string): Manifest {
  const path = join(directory, "manifest.json");
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch (err) {
    throw new IoError("io", `cannot read ${path}: ${String(err)}`);
  }
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (err) {
    throw new IoError("io", `${path} is not valid JSON: ${String(err)}`);
  }
  const manifest = doc as Partial<Manifest>;
  if (!manifest.grid || !Array.isArray(manifest.samples)) {
    throw new IoError("io", `${path} is not a dataset manifest`);
  }
  return {
    grid: manifest.grid,
    dt: manifest.dt ?? 0,
    stats: manifest.stats ?? null,
    samples: manifest.samples,
  };
}

/** Load a dataset directory; samples come back sorted by timestamp. */
export function loadDataset(directory: string): Dataset {
  const manifest = loadManifest(directory);
  const entries = [...manifest.samples].sort((a, b) => a.timestamp - b.timestamp);
  const samples = entries.map((entry) =>
    readSampleFile(join(directory, entry.file), manifest.grid, entry.timestamp),
  );
  return { grid: manifest.grid, dt: manifest.dt, stats: manifest.stats, samples };
}

/** Serialize one sample as WFB1 bytes (internal: CLI transport only). */
export function encodeSample(sample: BoundSample): Buffer {
  const { rows, cols } = sample.u.grid;
  const cells = rows * cols;
  const buf = Buffer.alloc(HEADER_BYTES + 2 * 4 * cells);
  buf.writeUInt32LE(MAGIC, 0);
  buf.writeUInt32LE(rows, 4);
  buf.writeUInt32LE(cols, 8);
  buf.writeUInt32LE(2, 12);
  for (let i = 0; i < cells; i++) {
    buf.writeFloatLE(sample.u.values[i], HEADER_BYTES + 4 * i);
  }
  for (let i = 0; i < cells; i++) {
    buf.writeFloatLE(sample.v.values[i], HEADER_BYTES + 4 * (cells + i));
  }
  return buf;
}
