/** Per-(scheme, axis value) aggregation of sweep rows. */

import type { Scheme, SweepRow } from "./csv.js";

export interface SeriesPoint {
  axisValue: number;
  mean: number;
  stdError: number;
  n: number;
}

export type SeriesByScheme = Map<Scheme, SeriesPoint[]>;

function meanOf(values: number[]): number {
  return values.reduce((acc, v) => acc + v, 0) / values.length;
}

/** Standard error of the mean with the n-1 (sample) variance; 0 for n = 1. */
export function stdError(values: number[]): number {
  if (values.length < 2) {
    return 0;
  }
  const mean = meanOf(values);
  const variance =
    values.reduce((acc, v) => acc + (v - mean) * (v - mean), 0) /
    (values.length - 1);
  return Math.sqrt(variance / values.length);
}

export function aggregate(rows: SweepRow[]): SeriesByScheme {
  const buckets = new Map<string, { scheme: Scheme; axisValue: number; rates: number[] }>();
  for (const row of rows) {
    const key = `${row.scheme}@${row.axisValue}`;
    let bucket = buckets.get(key);
    if (!bucket) {
      bucket = { scheme: row.scheme, axisValue: row.axisValue, rates: [] };
      buckets.set(key, bucket);
    }
    bucket.rates.push(row.sumRate);
  }
  const series: SeriesByScheme = new Map();
  for (const { scheme, axisValue, rates } of buckets.values()) {
    const points = series.get(scheme) ?? [];
    points.push({
      axisValue,
      mean: meanOf(rates),
      stdError: stdError(rates),
      n: rates.length,
    });
    series.set(scheme, points);
  }
  for (const points of series.values()) {
    points.sort((a, b) => a.axisValue - b.axisValue);
  }
  return series;
}
