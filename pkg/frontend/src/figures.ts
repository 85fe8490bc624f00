/** Builders for the three figure kinds: growth (log fit over the lattice
 * ladder), plateau (boundedness across rungs), spectrum (paired decay
 * exponents of linear vs nonlinear shell medians). */

import { z } from "zod";

import { Row, SchemaError } from "./schema";
import { fitLine, log2, mainRows, rungPoints, seriesRows } from "./stats";
import { FigureModel, Point } from "./svg";

export const KINDS = ["growth", "plateau", "spectrum"] as const;
export type Kind = (typeof KINDS)[number];

export const figureSpecSchema = z.object({
  inputs: z.array(z.string()).min(1),
  kind: z.enum(KINDS),
  out: z.string().min(1),
  xscale: z.enum(["linear", "log"]).optional(),
  yscale: z.enum(["linear", "log"]).optional(),
  styleSeed: z.number().int().nonnegative().default(0),
  title: z.string().optional(),
});

export type FigureSpec = z.infer<typeof figureSpecSchema>;

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

export function palette(styleSeed: number, index: number): string {
  return PALETTE[(styleSeed + index) % PALETTE.length];
}

export interface BuiltFigure {
  model: FigureModel;
  /** headline fitted quantity of the figure, for tests and CLI output */
  fittedSlope: number | null;
}

function denseLine(x0: number, x1: number, f: (x: number) => number, n = 64): Point[] {
  const pts: Point[] = [];
  for (let i = 0; i <= n; i++) {
    const x = x0 * Math.pow(x1 / x0, i / n);
    pts.push({ x, y: f(x) });
  }
  return pts;
}

export function buildGrowth(rows: Row[], spec: FigureSpec): BuiltFigure {
  const pts = rungPoints(mainRows(rows));
  if (pts.length < 2) {
    throw new SchemaError("growth figure needs at least two rungs");
  }
  const fit = fitLine(pts.map((p) => log2(p.nMax)), pts.map((p) => p.mean));
  const name = rows[0].experiment;
  const model: FigureModel = {
    title: spec.title ?? `${name}: growth across the lattice ladder`,
    xLabel: "n_max",
    yLabel: "per-rung mean of value",
    xScale: spec.xscale ?? "log",
    yScale: spec.yscale ?? "linear",
    series: [
      {
        label: "rung mean +/- SE",
        color: palette(spec.styleSeed, 0),
        errorBars: true,
        points: pts.map((p) => ({ x: p.nMax, y: p.mean, err: p.stdErr })),
      },
    ],
    fits: [
      {
        label: `fit: ${fit.slope.toFixed(3)} log2(n) + ${fit.intercept.toFixed(3)}`,
        color: palette(spec.styleSeed, 1),
        points: denseLine(pts[0].nMax, pts[pts.length - 1].nMax, (x) =>
          fit.intercept + fit.slope * log2(x)),
      },
    ],
    annotations: [
      `fitted log2-slope = ${fit.slope.toFixed(4)}`,
      `residual RMS = ${fit.residual.toExponential(2)}`,
    ],
  };
  return { model, fittedSlope: fit.slope };
}

export function buildPlateau(rows: Row[], spec: FigureSpec): BuiltFigure {
  const pts = rungPoints(mainRows(rows));
  if (pts.length < 2) {
    throw new SchemaError("plateau figure needs at least two rungs");
  }
  const last = pts[pts.length - 1].mean;
  const prev = pts[pts.length - 2].mean;
  const ratio = last / prev;
  const name = rows[0].experiment;
  const model: FigureModel = {
    title: spec.title ?? `${name}: boundedness across the lattice ladder`,
    xLabel: "n_max",
    yLabel: "per-rung mean of value",
    xScale: spec.xscale ?? "log",
    yScale: spec.yscale ?? "linear",
    series: [
      {
        label: "rung mean +/- SE",
        color: palette(spec.styleSeed, 0),
        errorBars: true,
        points: pts.map((p) => ({ x: p.nMax, y: p.mean, err: p.stdErr })),
      },
    ],
    fits: [
      {
        label: "final level",
        color: "#888888",
        points: [
          { x: pts[0].nMax, y: last },
          { x: pts[pts.length - 1].nMax, y: last },
        ],
      },
    ],
    annotations: [`last-two-rung ratio = ${ratio.toFixed(5)}`],
  };
  return { model, fittedSlope: ratio };
}

export function buildSpectrum(rows: Row[], spec: FigureSpec): BuiltFigure {
  const bySeries = seriesRows(rows);
  for (const required of ["linear", "nonlinear"]) {
    if (!bySeries.has(required)) {
      throw new SchemaError(
        `spectrum figure needs '/${required}' series rows ` +
          `(have: ${[...bySeries.keys()].map((s) => "/" + s).join(", ") || "none"})`,
      );
    }
  }
  const series = [];
  const fits = [];
  const annotations: string[] = [];
  const slopes: number[] = [];
  let idx = 0;
  for (const label of ["linear", "nonlinear"]) {
    const data = bySeries.get(label)!;
    // rung_index is the absolute dyadic shell exponent j; the shell
    // center frequency is 1.5 * 2^j
    const pts = data
      .map((r) => ({ x: 1.5 * 2 ** r.rungIndex, y: r.value }))
      .sort((a, b) => a.x - b.x);
    if (pts.some((p) => p.y <= 0)) {
      throw new SchemaError(`spectrum series '/${label}' has non-positive medians`);
    }
    const fit = fitLine(pts.map((p) => Math.log(p.x)), pts.map((p) => Math.log(p.y)));
    slopes.push(fit.slope);
    const color = palette(spec.styleSeed, idx);
    series.push({ label: `${label} part`, color, points: pts });
    fits.push({
      label: `${label} slope ${fit.slope.toFixed(3)}`,
      color,
      points: denseLine(pts[0].x, pts[pts.length - 1].x, (x) =>
        Math.exp(fit.intercept + fit.slope * Math.log(x))),
    });
    annotations.push(`${label} decay exponent = ${fit.slope.toFixed(4)}`);
    idx += 1;
  }
  annotations.push(`smoothing gap = ${(slopes[0] - slopes[1]).toFixed(4)}`);
  const name = rows[0].experiment.split("/")[0];
  const model: FigureModel = {
    title: spec.title ?? `${name}: shell-median decay, linear vs nonlinear part`,
    xLabel: "shell center frequency",
    yLabel: "shell median amplitude",
    xScale: spec.xscale ?? "log",
    yScale: spec.yscale ?? "log",
    series,
    fits,
    annotations,
  };
  return { model, fittedSlope: slopes[0] - slopes[1] };
}

export function buildFigure(rows: Row[], spec: FigureSpec): BuiltFigure {
  switch (spec.kind) {
    case "growth":
      return buildGrowth(rows, spec);
    case "plateau":
      return buildPlateau(rows, spec);
    case "spectrum":
      return buildSpectrum(rows, spec);
  }
}
