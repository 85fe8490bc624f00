/** File-to-file rendering: CSV inputs -> one SVG and one PNG per spec.
 * Pure and idempotent: identical inputs always produce identical bytes. */

import * as fs from "node:fs";
import * as path from "node:path";

import { Resvg } from "@resvg/resvg-js";

import { BuiltFigure, FigureSpec, buildFigure, figureSpecSchema } from "./figures";
import { Row, parseRows } from "./schema";
import { renderSvg } from "./svg";

export interface RenderResult {
  svgPath: string;
  pngPath: string;
  figure: BuiltFigure;
}

export function loadSpec(specPath: string): FigureSpec {
  const raw = JSON.parse(fs.readFileSync(specPath, "utf8"));
  const check = figureSpecSchema.safeParse(raw);
  if (!check.success) {
    const issue = check.error.issues[0];
    throw new Error(`${specPath}: ${issue.path.join(".")}: ${issue.message}`);
  }
  return check.data;
}

function outputBase(out: string): string {
  const ext = path.extname(out).toLowerCase();
  return ext === ".svg" || ext === ".png" ? out.slice(0, -ext.length) : out;
}

export function readInputRows(spec: FigureSpec): Row[] {
  const rows: Row[] = [];
  for (const input of spec.inputs) {
    const text = fs.readFileSync(input, "utf8");
    rows.push(...parseRows(text, input));
  }
  return rows;
}

export function render(spec: FigureSpec): RenderResult {
  const rows = readInputRows(spec);
  const figure = buildFigure(rows, spec);
  const svg = renderSvg(figure.model);
  const base = outputBase(spec.out);
  fs.mkdirSync(path.dirname(path.resolve(base)), { recursive: true });
  const svgPath = `${base}.svg`;
  const pngPath = `${base}.png`;
  fs.writeFileSync(svgPath, svg);
  const png = new Resvg(svg, {
    background: "white",
    fitTo: { mode: "original" },
  }).render().asPng();
  fs.writeFileSync(pngPath, png);
  return { svgPath, pngPath, figure };
}
