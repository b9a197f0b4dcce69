#!/usr/bin/env node
/**
 * plot --csv <path> --axis <snr|psi_max|r> --out <image.svg> [--title <text>]
 *
 * Reads a mrabeam sweep CSV and writes one SVG chart with a mean-rate series
 * per scheme and standard-error bars. Exits 0 on success, 1 on usage or I/O
 * problems, 2 on schema or axis mismatches.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { resolve } from "node:path";
import { fileURLToPath } from "node:url";

import { AXES, CsvSchemaError, parseSweepCsv, rowsForAxis, type AxisName } from "./csv.js";
import { renderSvg } from "./svg.js";

interface Args {
  csv: string;
  axis: AxisName;
  out: string;
  title?: string;
}

export function parseArgs(argv: string[]): Args {
  const values = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (!flag.startsWith("--") || value === undefined) {
      throw new Error(`usage error near "${flag}"`);
    }
    values.set(flag.slice(2), value);
  }
  const csv = values.get("csv");
  const axis = values.get("axis");
  const out = values.get("out");
  if (!csv || !axis || !out) {
    throw new Error("required: --csv <path> --axis <snr|psi_max|r> --out <image>");
  }
  if (!(AXES as readonly string[]).includes(axis)) {
    throw new Error(`--axis must be one of ${AXES.join(", ")}, got "${axis}"`);
  }
  return { csv, axis: axis as AxisName, out, title: values.get("title") };
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
  let text: string;
  try {
    text = readFileSync(args.csv, "utf8");
  } catch (err) {
    console.error(`error: cannot read ${args.csv}: ${(err as Error).message}`);
    return 1;
  }
  try {
    const rows = rowsForAxis(parseSweepCsv(text), args.axis);
    const svg = renderSvg(rows, args.axis, args.title);
    writeFileSync(args.out, svg + "\n");
  } catch (err) {
    if (err instanceof CsvSchemaError) {
      console.error(`error: ${err.message}`);
      return 2;
    }
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
  return 0;
}

if (process.argv[1] && fileURLToPath(import.meta.url) === resolve(process.argv[1])) {
  process.exit(main(process.argv.slice(2)));
}
