import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { main } from "../src/cli.js";
import { EXPECTED_HEADER, parseSweepCsv, type AxisName } from "../src/csv.js";
import { aggregate } from "../src/stats.js";
import { renderSvg } from "../src/svg.js";

const FIXTURES = join(__dirname, "fixtures");

function fixtureRows(name: string) {
  return parseSweepCsv(readFileSync(join(FIXTURES, name), "utf8"));
}

function markers(svg: string) {
  const out: { scheme: string; axisValue: number; mean: number; stderr: number }[] = [];
  const re =
    /<circle class="marker" data-scheme="([A-Z]+)" data-axis-value="([^"]+)" data-mean="([^"]+)" data-stderr="([^"]+)"/g;
  let match;
  while ((match = re.exec(svg)) !== null) {
    out.push({
      scheme: match[1],
      axisValue: Number(match[2]),
      mean: Number(match[3]),
      stderr: Number(match[4]),
    });
  }
  return out;
}

const AXIS_FIXTURES: [AxisName, string, number][] = [
  ["snr", "sweep_snr.csv", 5],
  ["psi_max", "sweep_psi_max.csv", 4],
  ["r", "sweep_r.csv", 5],
];

describe("renderSvg", () => {
  it.each(AXIS_FIXTURES)(
    "draws four labeled series for the %s axis",
    (axis, file, nPoints) => {
      const svg = renderSvg(fixtureRows(file), axis);
      const polylines = svg.match(/<polyline class="series"/g) ?? [];
      expect(polylines).toHaveLength(4);
      for (const scheme of ["FPA", "MA", "RA", "MRA"]) {
        expect(svg).toContain(`data-scheme="${scheme}"`);
        expect(svg).toContain(`<text class="legend"`);
        expect(svg).toMatch(new RegExp(`<text class="legend"[^>]*>${scheme}</text>`));
      }
      const points = svg.match(/<polyline class="series"[^>]*points="([^"]+)"/);
      expect(points).not.toBeNull();
      expect(points![1].split(" ")).toHaveLength(nPoints);
      expect(markers(svg)).toHaveLength(4 * nPoints);
    },
  );

  it("embeds the aggregate means it plots", () => {
    const rows = fixtureRows("sweep_snr.csv");
    const svg = renderSvg(rows, "snr");
    const series = aggregate(rows);
    for (const marker of markers(svg)) {
      const point = series
        .get(marker.scheme as never)!
        .find((p) => p.axisValue === marker.axisValue)!;
      expect(marker.mean).toBeCloseTo(point.mean, 12);
      expect(marker.stderr).toBeCloseTo(point.stdError, 12);
    }
  });

  it("matches the aggregate exported by the simulation package", () => {
    const expected: { scheme: string; axis_value: number; mean: number; stderr: number }[] =
      JSON.parse(readFileSync(join(FIXTURES, "expected_aggregate_snr.json"), "utf8"));
    const svg = renderSvg(fixtureRows("sweep_snr.csv"), "snr");
    const found = markers(svg);
    expect(found.length).toBe(expected.length);
    for (const want of expected) {
      const got = found.find(
        (m) => m.scheme === want.scheme && m.axisValue === want.axis_value,
      )!;
      expect(got).toBeDefined();
      expect(Math.abs(got.mean - want.mean)).toBeLessThan(1e-9);
      expect(Math.abs(got.stderr - want.stderr)).toBeLessThan(1e-9);
    }
  });

  it("labels both axes with units", () => {
    const svg = renderSvg(fixtureRows("sweep_snr.csv"), "snr");
    expect(svg).toContain("SNR (dB)");
    expect(svg).toContain("Sum rate (bits/s/Hz)");
  });

  it("collapses error bars for single-trial data", () => {
    const single = fixtureRows("sweep_snr.csv").filter((r) => r.trial === 0);
    const svg = renderSvg(single, "snr");
    const bars = [...svg.matchAll(/<line class="errorbar"[^>]*y1="([^"]+)" x2="[^"]+" y2="([^"]+)"/g)];
    expect(bars.length).toBeGreaterThan(0);
    for (const bar of bars) {
      expect(Number(bar[1])).toBeCloseTo(Number(bar[2]), 9);
    }
    for (const marker of markers(svg)) {
      expect(marker.stderr).toBe(0);
    }
  });
});

describe("cli", () => {
  it("writes an SVG for a valid request", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    const out = join(dir, "snr.svg");
    const code = main([
      "--csv", join(FIXTURES, "sweep_snr.csv"),
      "--axis", "snr",
      "--out", out,
      "--title", "Sum rate vs SNR",
    ]);
    expect(code).toBe(0);
    const svg = readFileSync(out, "utf8");
    expect(svg).toContain("<svg");
    expect(svg).toContain("Sum rate vs SNR");
  });

  it("exits nonzero on schema mismatch", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    const bad = join(dir, "bad.csv");
    writeFileSync(bad, "a,b\n1,2\n");
    const code = main(["--csv", bad, "--axis", "snr", "--out", join(dir, "x.svg")]);
    expect(code).toBe(2);
  });

  it("exits nonzero on empty input", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    const empty = join(dir, "empty.csv");
    writeFileSync(empty, "");
    const code = main(["--csv", empty, "--axis", "snr", "--out", join(dir, "x.svg")]);
    expect(code).toBe(2);
  });

  it("exits nonzero on an axis mismatch", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    const code = main([
      "--csv", join(FIXTURES, "sweep_r.csv"),
      "--axis", "snr",
      "--out", join(dir, "x.svg"),
    ]);
    expect(code).toBe(2);
  });

  it("exits nonzero on a missing file", () => {
    const code = main(["--csv", "/nonexistent.csv", "--axis", "snr", "--out", "/tmp/x.svg"]);
    expect(code).toBe(1);
  });

  it("exits nonzero on bad usage", () => {
    expect(main(["--csv", "x.csv"])).toBe(1);
    expect(main(["--csv", "x.csv", "--axis", "frequency", "--out", "y.svg"])).toBe(1);
  });

  it("header constant matches the simulation package schema", () => {
    expect(EXPECTED_HEADER).toBe(
      "scheme,axis,axis_value,trial,sum_rate_bps_hz,iterations,converged",
    );
  });
});
