/** Minimal deterministic SVG chart renderer: axes, ticks, polylines,
 * error bars, dashed fit overlays and a text annotation block.  No DOM,
 * no randomness: a fixed model always yields identical bytes. */

export interface Point {
  x: number;
  y: number;
  err?: number;
}

export interface Series {
  label: string;
  color: string;
  points: Point[];
  errorBars?: boolean;
}

export interface FitOverlay {
  label: string;
  color: string;
  points: Point[];
}

export type Scale = "linear" | "log";

export interface FigureModel {
  title: string;
  xLabel: string;
  yLabel: string;
  xScale: Scale;
  yScale: Scale;
  series: Series[];
  fits: FitOverlay[];
  annotations: string[];
  width?: number;
  height?: number;
}

const MARGIN = { left: 64, right: 18, top: 34, bottom: 46 };

export function fmt(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 0.01 && a < 10000) {
    return String(Number(v.toPrecision(4)));
  }
  return v.toExponential(2);
}

function transform(scale: Scale, v: number): number {
  if (scale === "log") {
    if (v <= 0) throw new Error(`log scale cannot place non-positive value ${v}`);
    return Math.log(v);
  }
  return v;
}

function range(values: number[]): [number, number] {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const pad = 0.06 * (hi - lo);
  return [lo - pad, hi + pad];
}

function ticks(scale: Scale, lo: number, hi: number): number[] {
  if (scale === "log") {
    // powers of two when the span is modest, otherwise powers of ten
    const base = hi / lo <= 2 ** 14 ? 2 : 10;
    const out: number[] = [];
    let p = Math.pow(base, Math.ceil(Math.log(lo) / Math.log(base) - 1e-9));
    while (p <= hi * (1 + 1e-9)) {
      if (p >= lo * (1 - 1e-9)) out.push(p);
      p *= base;
    }
    return out;
  }
  const span = hi - lo;
  const raw = span / 5;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => span / s <= 6) ?? 10 * mag;
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step) {
    out.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return out;
}

const esc = (s: string) =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

export function renderSvg(model: FigureModel): string {
  const width = model.width ?? 720;
  const height = model.height ?? 480;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;

  const allPoints = [...model.series, ...model.fits].flatMap((s) => s.points);
  if (allPoints.length === 0) throw new Error("nothing to draw");
  const xs = allPoints.map((p) => transform(model.xScale, p.x));
  const ys = allPoints.flatMap((p) => {
    const y = transform(model.yScale, p.y);
    if (p.err && model.yScale === "linear") return [y - p.err, y + p.err];
    return [y];
  });
  const [x0, x1] = range(xs);
  const [y0, y1] = range(ys);
  const px = (x: number) =>
    MARGIN.left + ((transform(model.xScale, x) - x0) / (x1 - x0)) * plotW;
  const py = (y: number) =>
    MARGIN.top + plotH - ((transform(model.yScale, y) - y0) / (y1 - y0)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="DejaVu Sans, Helvetica, sans-serif">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  parts.push(
    `<text x="${width / 2}" y="20" text-anchor="middle" font-size="14">` +
      `${esc(model.title)}</text>`,
  );

  // axes box
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" ` +
      `fill="none" stroke="#444" stroke-width="1"/>`,
  );

  // ticks and grid
  const xTickVals = model.xScale === "linear"
    ? ticks("linear", x0, x1)
    : ticks("log", Math.exp(x0), Math.exp(x1));
  for (const v of xTickVals) {
    const x = px(v);
    if (x < MARGIN.left - 0.5 || x > width - MARGIN.right + 0.5) continue;
    parts.push(
      `<line x1="${x.toFixed(2)}" y1="${MARGIN.top}" x2="${x.toFixed(2)}" ` +
        `y2="${MARGIN.top + plotH}" stroke="#ddd" stroke-width="0.6"/>`,
    );
    parts.push(
      `<text x="${x.toFixed(2)}" y="${MARGIN.top + plotH + 16}" text-anchor="middle" ` +
        `font-size="10">${fmt(v)}</text>`,
    );
  }
  const yTicks = model.yScale === "linear"
    ? ticks("linear", y0, y1)
    : ticks("log", Math.exp(y0), Math.exp(y1));
  for (const v of yTicks) {
    const y = py(v);
    if (y < MARGIN.top - 0.5 || y > MARGIN.top + plotH + 0.5) continue;
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y.toFixed(2)}" x2="${MARGIN.left + plotW}" ` +
        `y2="${y.toFixed(2)}" stroke="#ddd" stroke-width="0.6"/>`,
    );
    parts.push(
      `<text x="${MARGIN.left - 6}" y="${(y + 3).toFixed(2)}" text-anchor="end" ` +
        `font-size="10">${fmt(v)}</text>`,
    );
  }

  // axis labels
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${height - 10}" text-anchor="middle" ` +
      `font-size="12">${esc(model.xLabel)}</text>`,
  );
  parts.push(
    `<text x="16" y="${MARGIN.top + plotH / 2}" text-anchor="middle" font-size="12" ` +
      `transform="rotate(-90 16 ${MARGIN.top + plotH / 2})">${esc(model.yLabel)}</text>`,
  );

  // fit overlays (dashed, under the data)
  for (const fit of model.fits) {
    const path = fit.points
      .map((p, i) => `${i === 0 ? "M" : "L"}${px(p.x).toFixed(2)},${py(p.y).toFixed(2)}`)
      .join(" ");
    parts.push(
      `<path d="${path}" fill="none" stroke="${fit.color}" stroke-width="1.4" ` +
        `stroke-dasharray="6 4"/>`,
    );
  }

  // data series
  for (const s of model.series) {
    const path = s.points
      .map((p, i) => `${i === 0 ? "M" : "L"}${px(p.x).toFixed(2)},${py(p.y).toFixed(2)}`)
      .join(" ");
    parts.push(`<path d="${path}" fill="none" stroke="${s.color}" stroke-width="1.8"/>`);
    for (const p of s.points) {
      if (s.errorBars && p.err && model.yScale === "linear") {
        const x = px(p.x);
        const yLo = py(p.y - p.err);
        const yHi = py(p.y + p.err);
        parts.push(
          `<line x1="${x.toFixed(2)}" y1="${yLo.toFixed(2)}" x2="${x.toFixed(2)}" ` +
            `y2="${yHi.toFixed(2)}" stroke="${s.color}" stroke-width="1.1"/>`,
        );
        for (const yy of [yLo, yHi]) {
          parts.push(
            `<line x1="${(x - 3).toFixed(2)}" y1="${yy.toFixed(2)}" ` +
              `x2="${(x + 3).toFixed(2)}" y2="${yy.toFixed(2)}" ` +
              `stroke="${s.color}" stroke-width="1.1"/>`,
          );
        }
      }
      parts.push(
        `<circle cx="${px(p.x).toFixed(2)}" cy="${py(p.y).toFixed(2)}" r="3" ` +
          `fill="${s.color}"/>`,
      );
    }
  }

  // legend, top right inside the axes box
  let ly = MARGIN.top + 14;
  const legendX = MARGIN.left + plotW - 150;
  for (const s of [...model.series, ...model.fits]) {
    parts.push(
      `<line x1="${legendX}" y1="${ly - 4}" x2="${legendX + 16}" y2="${ly - 4}" ` +
        `stroke="${s.color}" stroke-width="2"/>`,
    );
    parts.push(
      `<text x="${legendX + 20}" y="${ly}" text-anchor="start" font-size="10">` +
        `${esc(s.label)}</text>`,
    );
    ly += 14;
  }

  // annotation block
  let ay = MARGIN.top + 14;
  for (const line of model.annotations) {
    parts.push(
      `<text x="${MARGIN.left + 8}" y="${ay}" font-size="11" fill="#222">` +
        `${esc(line)}</text>`,
    );
    ay += 15;
  }

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
