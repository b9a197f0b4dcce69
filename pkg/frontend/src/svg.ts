/** SVG line-chart rendering: one series per scheme, error bars, legend. */

import { SCHEMES, type AxisName, type SweepRow } from "./csv.js";
import { aggregate, type SeriesPoint } from "./stats.js";

const WIDTH = 720;
const HEIGHT = 480;
const MARGIN = { top: 48, right: 36, bottom: 64, left: 72 };

const SERIES_COLOR: Record<string, string> = {
  FPA: "#7f7f7f",
  MA: "#1f77b4",
  RA: "#2ca02c",
  MRA: "#d62728",
};

export const AXIS_LABEL: Record<AxisName, string> = {
  snr: "SNR (dB)",
  psi_max: "Max rotation psi_max (radian-equivalent virtual-angle units)",
  r: "Movable region multiplier r",
};

const Y_LABEL = "Sum rate (bits/s/Hz)";

interface Extent {
  min: number;
  max: number;
}

function extentOf(values: number[], padFraction = 0.05): Extent {
  let min = Math.min(...values);
  let max = Math.max(...values);
  if (min === max) {
    min -= 0.5;
    max += 0.5;
  }
  const pad = (max - min) * padFraction;
  return { min: min - pad, max: max + pad };
}

function ticks(extent: Extent, count = 5): number[] {
  const span = extent.max - extent.min;
  const rawStep = span / (count - 1);
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const step = [1, 2, 2.5, 5, 10]
    .map((m) => m * power)
    .find((s) => span / s <= count) ?? rawStep;
  const start = Math.ceil(extent.min / step) * step;
  const out: number[] = [];
  for (let v = start; v <= extent.max + 1e-12; v += step) {
    out.push(Number(v.toPrecision(12)));
  }
  return out;
}

function fmt(value: number): string {
  return Number(value.toPrecision(6)).toString();
}

export function renderSvg(rows: SweepRow[], axis: AxisName, title?: string): string {
  const series = aggregate(rows);
  const allPoints: SeriesPoint[] = [...series.values()].flat();
  const xExtent = extentOf(allPoints.map((p) => p.axisValue));
  const yExtent = extentOf(
    allPoints.flatMap((p) => [p.mean - p.stdError, p.mean + p.stdError]),
  );

  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const sx = (v: number) =>
    MARGIN.left + ((v - xExtent.min) / (xExtent.max - xExtent.min)) * plotW;
  const sy = (v: number) =>
    MARGIN.top + plotH - ((v - yExtent.min) / (yExtent.max - yExtent.min)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif" font-size="13">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
  );
  if (title) {
    parts.push(
      `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="16">${title}</text>`,
    );
  }

  // frame and grid
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#333"/>`,
  );
  for (const tick of ticks(xExtent)) {
    const x = sx(tick);
    parts.push(
      `<line x1="${x}" y1="${MARGIN.top + plotH}" x2="${x}" y2="${MARGIN.top + plotH + 5}" stroke="#333"/>`,
      `<text x="${x}" y="${MARGIN.top + plotH + 20}" text-anchor="middle">${fmt(tick)}</text>`,
    );
  }
  for (const tick of ticks(yExtent)) {
    const y = sy(tick);
    parts.push(
      `<line x1="${MARGIN.left - 5}" y1="${y}" x2="${MARGIN.left}" y2="${y}" stroke="#333"/>`,
      `<text x="${MARGIN.left - 9}" y="${y + 4}" text-anchor="end">${fmt(tick)}</text>`,
    );
  }
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 16}" text-anchor="middle">${AXIS_LABEL[axis]}</text>`,
    `<text x="20" y="${MARGIN.top + plotH / 2}" text-anchor="middle" transform="rotate(-90 20 ${MARGIN.top + plotH / 2})">${Y_LABEL}</text>`,
  );

  // series in fixed legend order
  for (const scheme of SCHEMES) {
    const points = series.get(scheme);
    if (!points) {
      continue;
    }
    const color = SERIES_COLOR[scheme];
    const path = points.map((p) => `${sx(p.axisValue)},${sy(p.mean)}`).join(" ");
    parts.push(
      `<polyline class="series" data-scheme="${scheme}" points="${path}" fill="none" stroke="${color}" stroke-width="2"/>`,
    );
    for (const p of points) {
      const x = sx(p.axisValue);
      const yLo = sy(p.mean - p.stdError);
      const yHi = sy(p.mean + p.stdError);
      parts.push(
        `<line class="errorbar" data-scheme="${scheme}" x1="${x}" y1="${yLo}" x2="${x}" y2="${yHi}" stroke="${color}" stroke-width="1"/>`,
        `<circle class="marker" data-scheme="${scheme}" data-axis-value="${p.axisValue}" data-mean="${p.mean}" data-stderr="${p.stdError}" cx="${x}" cy="${sy(p.mean)}" r="3.5" fill="${color}"/>`,
      );
    }
  }

  // legend
  const legendX = MARGIN.left + 12;
  let legendY = MARGIN.top + 12;
  for (const scheme of SCHEMES) {
    if (!series.has(scheme)) {
      continue;
    }
    parts.push(
      `<line x1="${legendX}" y1="${legendY}" x2="${legendX + 24}" y2="${legendY}" stroke="${SERIES_COLOR[scheme]}" stroke-width="2"/>`,
      `<text class="legend" x="${legendX + 30}" y="${legendY + 4}">${scheme}</text>`,
    );
    legendY += 18;
  }

  parts.push("</svg>");
  return parts.join("\n");
}
