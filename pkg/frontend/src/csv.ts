/** Parsing and validation of the sweep CSV emitted by the mrabeam CLI. */

export const EXPECTED_HEADER =
  "scheme,axis,axis_value,trial,sum_rate_bps_hz,iterations,converged";

export const SCHEMES = ["FPA", "MA", "RA", "MRA"] as const;
export type Scheme = (typeof SCHEMES)[number];

export const AXES = ["snr", "psi_max", "r"] as const;
export type AxisName = (typeof AXES)[number];

export interface SweepRow {
  scheme: Scheme;
  axis: string;
  axisValue: number;
  trial: number;
  sumRate: number;
  iterations: number;
  converged: boolean;
}

export class CsvSchemaError extends Error {}

function parseNumber(raw: string, line: number, field: string): number {
  const value = Number(raw);
  if (raw.trim() === "" || !Number.isFinite(value)) {
    throw new CsvSchemaError(`line ${line}: ${field} is not a number: "${raw}"`);
  }
  return value;
}

export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new CsvSchemaError("empty input");
  }
  if (lines[0] !== EXPECTED_HEADER) {
    throw new CsvSchemaError(
      `header mismatch: expected "${EXPECTED_HEADER}", got "${lines[0]}"`,
    );
  }
  if (lines.length === 1) {
    throw new CsvSchemaError("no data rows");
  }
  const rows: SweepRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== 7) {
      throw new CsvSchemaError(`line ${i + 1}: expected 7 fields, got ${parts.length}`);
    }
    const [scheme, axis, axisValue, trial, sumRate, iterations, converged] = parts;
    if (!(SCHEMES as readonly string[]).includes(scheme)) {
      throw new CsvSchemaError(`line ${i + 1}: unknown scheme "${scheme}"`);
    }
    if (converged !== "0" && converged !== "1") {
      throw new CsvSchemaError(`line ${i + 1}: converged must be 0 or 1`);
    }
    rows.push({
      scheme: scheme as Scheme,
      axis,
      axisValue: parseNumber(axisValue, i + 1, "axis_value"),
      trial: parseNumber(trial, i + 1, "trial"),
      sumRate: parseNumber(sumRate, i + 1, "sum_rate_bps_hz"),
      iterations: parseNumber(iterations, i + 1, "iterations"),
      converged: converged === "1",
    });
  }
  return rows;
}

/** Rows restricted to one axis; errors when the file carries a different one. */
export function rowsForAxis(rows: SweepRow[], axis: AxisName): SweepRow[] {
  const axes = new Set(rows.map((row) => row.axis));
  if (!axes.has(axis)) {
    throw new CsvSchemaError(
      `axis mismatch: requested "${axis}" but file contains ${[...axes].join(", ")}`,
    );
  }
  return rows.filter((row) => row.axis === axis);
}
