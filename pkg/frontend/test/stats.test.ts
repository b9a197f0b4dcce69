import { describe, expect, it } from "vitest";

import type { SweepRow } from "../src/csv.js";
import { aggregate, stdError } from "../src/stats.js";

function row(scheme: SweepRow["scheme"], axisValue: number, trial: number, rate: number): SweepRow {
  return {
    scheme,
    axis: "snr",
    axisValue,
    trial,
    sumRate: rate,
    iterations: 1,
    converged: true,
  };
}

describe("stdError", () => {
  it("is zero for a single sample", () => {
    expect(stdError([2.5])).toBe(0);
  });

  it("is zero for equal samples", () => {
    expect(stdError([2.5, 2.5])).toBe(0);
  });

  it("matches the hand-computed three-sample value", () => {
    // values 1, 2, 4: sample variance 7/3, stderr sqrt(7/3)/sqrt(3)
    expect(stdError([1, 2, 4])).toBeCloseTo(0.8819171036881969, 12);
  });
});

describe("aggregate", () => {
  it("groups by scheme and axis value with sorted points", () => {
    const rows = [
      row("FPA", 4, 0, 2.0),
      row("FPA", 0, 0, 1.0),
      row("FPA", 0, 1, 3.0),
      row("MA", 0, 0, 5.0),
    ];
    const series = aggregate(rows);
    const fpa = series.get("FPA")!;
    expect(fpa.map((p) => p.axisValue)).toEqual([0, 4]);
    expect(fpa[0].mean).toBeCloseTo(2.0, 12);
    expect(fpa[0].n).toBe(2);
    expect(series.get("MA")![0].mean).toBe(5.0);
  });

  it("hand-computed mean for three samples", () => {
    const rows = [row("RA", 1, 0, 1), row("RA", 1, 1, 2), row("RA", 1, 2, 4)];
    const point = aggregate(rows).get("RA")![0];
    expect(point.mean).toBeCloseTo(7 / 3, 12);
    expect(point.stdError).toBeCloseTo(0.8819171036881969, 12);
  });
});
