import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { CsvSchemaError, EXPECTED_HEADER, parseSweepCsv, rowsForAxis } from "../src/csv.js";

const FIXTURES = join(__dirname, "fixtures");

function fixture(name: string): string {
  return readFileSync(join(FIXTURES, name), "utf8");
}

describe("parseSweepCsv", () => {
  it("parses a real sweep file", () => {
    const rows = parseSweepCsv(fixture("sweep_snr.csv"));
    // 4 schemes x 5 snr values x 3 trials
    expect(rows).toHaveLength(60);
    const schemes = new Set(rows.map((r) => r.scheme));
    expect([...schemes].sort()).toEqual(["FPA", "MA", "MRA", "RA"]);
    expect(rows.every((r) => r.axis === "snr")).toBe(true);
    expect(rows.every((r) => Number.isFinite(r.sumRate) && r.sumRate >= 0)).toBe(true);
  });

  it("rejects empty input", () => {
    expect(() => parseSweepCsv("")).toThrow(CsvSchemaError);
  });

  it("rejects header-only input", () => {
    expect(() => parseSweepCsv(EXPECTED_HEADER + "\n")).toThrow(/no data rows/);
  });

  it("rejects a wrong header", () => {
    expect(() => parseSweepCsv("a,b,c\n1,2,3\n")).toThrow(/header mismatch/);
  });

  it("rejects an unknown scheme", () => {
    const text = EXPECTED_HEADER + "\nZF,snr,0,0,1.5,3,1\n";
    expect(() => parseSweepCsv(text)).toThrow(/unknown scheme "ZF"/);
  });

  it("rejects non-numeric fields", () => {
    const text = EXPECTED_HEADER + "\nFPA,snr,0,0,abc,3,1\n";
    expect(() => parseSweepCsv(text)).toThrow(/sum_rate_bps_hz/);
  });

  it("rejects short rows", () => {
    const text = EXPECTED_HEADER + "\nFPA,snr,0,0,1.5\n";
    expect(() => parseSweepCsv(text)).toThrow(/expected 7 fields/);
  });
});

describe("rowsForAxis", () => {
  it("filters matching rows", () => {
    const rows = parseSweepCsv(fixture("sweep_r.csv"));
    expect(rowsForAxis(rows, "r")).toHaveLength(rows.length);
  });

  it("rejects an axis the file does not carry", () => {
    const rows = parseSweepCsv(fixture("sweep_r.csv"));
    expect(() => rowsForAxis(rows, "snr")).toThrow(/axis mismatch/);
  });
});
