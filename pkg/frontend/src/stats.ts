/** Per-rung reductions and the two least-squares fits the figures overlay.
 * The frontend never recomputes science: it only aggregates the rows the
 * runner wrote and annotates fitted trends. */

import { Row, splitSeries } from "./schema";

export interface RungPoint {
  rungIndex: number;
  nMax: number;
  mean: number;
  stdErr: number;
  trials: number;
}

export interface LineFit {
  slope: number;
  intercept: number;
  residual: number;
}

export function fitLine(xs: number[], ys: number[]): LineFit {
  if (xs.length < 2) {
    throw new Error("need at least two points to fit a line");
  }
  const n = xs.length;
  const mx = xs.reduce((a, b) => a + b, 0) / n;
  const my = ys.reduce((a, b) => a + b, 0) / n;
  let sxx = 0;
  let sxy = 0;
  for (let i = 0; i < n; i++) {
    sxx += (xs[i] - mx) ** 2;
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx === 0) throw new Error("degenerate fit: all x equal");
  const slope = sxy / sxx;
  const intercept = my - slope * mx;
  let rss = 0;
  for (let i = 0; i < n; i++) {
    rss += (ys[i] - (intercept + slope * xs[i])) ** 2;
  }
  return { slope, intercept, residual: Math.sqrt(rss / n) };
}

/** Collapse rows of one (suffix-free) experiment into per-rung mean and
 * standard error, ordered by rung index. */
export function rungPoints(rows: Row[]): RungPoint[] {
  const groups = new Map<number, { nMax: number; values: number[] }>();
  for (const row of rows) {
    const g = groups.get(row.rungIndex) ?? { nMax: row.nMax, values: [] };
    g.values.push(row.value);
    groups.set(row.rungIndex, g);
  }
  return [...groups.entries()]
    .sort(([a], [b]) => a - b)
    .map(([rungIndex, g]) => {
      const n = g.values.length;
      const mean = g.values.reduce((a, b) => a + b, 0) / n;
      let varSum = 0;
      for (const v of g.values) varSum += (v - mean) ** 2;
      const stdErr = n > 1 ? Math.sqrt(varSum / (n - 1) / n) : 0;
      return { rungIndex, nMax: g.nMax, mean, stdErr, trials: n };
    });
}

/** Rows of the main series (no suffix), for growth/plateau kinds. */
export function mainRows(rows: Row[]): Row[] {
  return rows.filter((r) => splitSeries(r.experiment).series === null);
}

/** Suffix series name -> rows, for the spectrum kind. */
export function seriesRows(rows: Row[]): Map<string, Row[]> {
  const out = new Map<string, Row[]>();
  for (const row of rows) {
    const { series } = splitSeries(row.experiment);
    if (series === null) continue;
    const list = out.get(series) ?? [];
    list.push(row);
    out.set(series, list);
  }
  return out;
}

export const log2 = (x: number) => Math.log2(x);
