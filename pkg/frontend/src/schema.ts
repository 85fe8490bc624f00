/**
 * The frozen CSV schema emitted by the experiment runner:
 * experiment,rung_index,n_max,alpha,s,trial,seed,value
 * with one row per (rung, trial).  Smoothing experiments carry extra
 * spectrum rows whose experiment column has a `/linear` or `/nonlinear`
 * suffix and whose rung_index is the absolute dyadic shell exponent.
 */

import Papa from "papaparse";
import { z } from "zod";

export const REQUIRED_COLUMNS = [
  "experiment",
  "rung_index",
  "n_max",
  "alpha",
  "s",
  "trial",
  "seed",
  "value",
] as const;

const numeric = (column: string) =>
  z.string().refine((v) => v.length > 0 && Number.isFinite(Number(v)), {
    message: `column '${column}' must be numeric`,
  });

const rawRow = z.object({
  experiment: z.string().min(1, "column 'experiment' must be non-empty"),
  rung_index: numeric("rung_index"),
  n_max: numeric("n_max"),
  alpha: numeric("alpha"),
  s: numeric("s"),
  trial: numeric("trial"),
  seed: numeric("seed"),
  value: numeric("value"),
});

export interface Row {
  experiment: string;
  rungIndex: number;
  nMax: number;
  alpha: number;
  s: number;
  trial: number;
  seed: string; // 64-bit values do not fit a JS number losslessly
  value: number;
}

export class SchemaError extends Error {}

/** Parse one CSV text under the frozen schema; throws SchemaError with a
 * column diagnostic on any mismatch and on an empty (but valid) file. */
export function parseRows(text: string, source = "<csv>"): Row[] {
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const e = parsed.errors[0];
    throw new SchemaError(`${source}: malformed CSV (${e.message} at row ${e.row})`);
  }
  const header = parsed.meta.fields ?? [];
  const missing = REQUIRED_COLUMNS.filter((c) => !header.includes(c));
  if (missing.length > 0) {
    throw new SchemaError(
      `${source}: missing required column(s): ${missing.join(", ")} ` +
        `(have: ${header.join(", ") || "none"})`,
    );
  }
  if (parsed.data.length === 0) {
    throw new SchemaError(`${source}: no rows`);
  }
  return parsed.data.map((record, i) => {
    const check = rawRow.safeParse(record);
    if (!check.success) {
      const issue = check.error.issues[0];
      throw new SchemaError(`${source}: row ${i + 1}: ${issue.message}`);
    }
    const r = check.data;
    return {
      experiment: r.experiment,
      rungIndex: Number(r.rung_index),
      nMax: Number(r.n_max),
      alpha: Number(r.alpha),
      s: Number(r.s),
      trial: Number(r.trial),
      seed: r.seed,
      value: Number(r.value),
    };
  });
}

/** Base experiment name and optional series suffix after the slash. */
export function splitSeries(experiment: string): { base: string; series: string | null } {
  const idx = experiment.indexOf("/");
  if (idx < 0) return { base: experiment, series: null };
  return { base: experiment.slice(0, idx), series: experiment.slice(idx + 1) };
}
