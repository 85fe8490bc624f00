import * as fs from "node:fs";
import * as path from "node:path";

import { afterAll, describe, expect, it } from "vitest";

import { buildFigure, figureSpecSchema } from "../src/figures";
import { parseRows } from "../src/schema";
import { main } from "../src/cli";
import { render } from "../src/render";

const FIXTURES = path.join(__dirname, "..", "fixtures");
const OUT = fs.mkdtempSync(path.join(__dirname, "out-"));

afterAll(() => fs.rmSync(OUT, { recursive: true, force: true }));

const spec = (over: object) =>
  figureSpecSchema.parse({
    inputs: [path.join(FIXTURES, "szego_growth.csv")],
    kind: "growth",
    out: path.join(OUT, "fig"),
    ...over,
  });

const PNG_SIGNATURE = Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);

describe("render", () => {
  it("renders a growth figure from the golden fixture", () => {
    const result = render(spec({ out: path.join(OUT, "growth") }));
    const svg = fs.readFileSync(result.svgPath, "utf8");
    expect(svg).toContain("<svg");
    expect(svg).toContain("fitted log2-slope");
    const png = fs.readFileSync(result.pngPath);
    expect(png.subarray(0, 8).equals(PNG_SIGNATURE)).toBe(true);
    expect(png.length).toBeGreaterThan(1000);
  });

  it("renders a plateau figure from the golden fixture", () => {
    const result = render(
      spec({
        inputs: [path.join(FIXTURES, "kdv_l2_bound.csv")],
        kind: "plateau",
        out: path.join(OUT, "plateau"),
      }),
    );
    const svg = fs.readFileSync(result.svgPath, "utf8");
    expect(svg).toContain("last-two-rung ratio");
    expect(result.figure.fittedSlope).toBeGreaterThan(0.9);
    expect(result.figure.fittedSlope).toBeLessThan(1.1);
  });

  it("renders a spectrum figure from the golden fixture", () => {
    const result = render(
      spec({
        inputs: [path.join(FIXTURES, "kdv_smoothing.csv")],
        kind: "spectrum",
        out: path.join(OUT, "spectrum"),
      }),
    );
    const svg = fs.readFileSync(result.svgPath, "utf8");
    expect(svg).toContain("decay exponent");
    expect(svg).toContain("smoothing gap");
    // KdV: the nonlinear part decays faster, so the gap is positive
    expect(result.figure.fittedSlope).toBeGreaterThan(0.3);
  });

  it("fits slope 1.0 +/- 0.05 on the synthetic log2 fixture", () => {
    const result = render(
      spec({
        inputs: [path.join(FIXTURES, "synthetic_log2.csv")],
        kind: "growth",
        out: path.join(OUT, "synthetic"),
      }),
    );
    expect(result.figure.fittedSlope).toBeGreaterThan(0.95);
    expect(result.figure.fittedSlope).toBeLessThan(1.05);
    const svg = fs.readFileSync(result.svgPath, "utf8");
    expect(svg).toMatch(/fitted log2-slope = 1\.0000/);
  });

  it("is deterministic and idempotent for a fixed input and style seed", () => {
    const s = spec({ out: path.join(OUT, "det"), styleSeed: 3 });
    const first = render(s);
    const svg1 = fs.readFileSync(first.svgPath);
    const png1 = fs.readFileSync(first.pngPath);
    const second = render(s);
    expect(fs.readFileSync(second.svgPath).equals(svg1)).toBe(true);
    expect(fs.readFileSync(second.pngPath).equals(png1)).toBe(true);
  });

  it("rejects CSVs missing spectrum series with a diagnostic", () => {
    expect(() =>
      render(spec({ kind: "spectrum", out: path.join(OUT, "bad") })),
    ).toThrowError(/needs '\/linear' series rows/);
  });
});

describe("figure building without files", () => {
  const HEADER = "experiment,rung_index,n_max,alpha,s,trial,seed,value";

  it("growth needs two rungs", () => {
    const rows = parseRows(`${HEADER}\ne,0,8,0,0,0,1,1.0`);
    expect(() => buildFigure(rows, spec({}))).toThrowError(/two rungs/);
  });

  it("spectrum rejects non-positive medians", () => {
    const rows = parseRows(
      [
        HEADER,
        "e/linear,3,64,0,0,0,1,0.0",
        "e/linear,4,64,0,0,0,1,1.0",
        "e/nonlinear,3,64,0,0,0,1,1.0",
        "e/nonlinear,4,64,0,0,0,1,0.5",
      ].join("\n"),
    );
    expect(() => buildFigure(rows, spec({ kind: "spectrum" }))).toThrowError(
      /non-positive/,
    );
  });
});

describe("cli", () => {
  it("renders via positional arguments", () => {
    const code = main([
      "render",
      path.join(FIXTURES, "szego_growth.csv"),
      "--kind",
      "growth",
      "--out",
      path.join(OUT, "cli-growth"),
    ]);
    expect(code).toBe(0);
    expect(fs.existsSync(path.join(OUT, "cli-growth.svg"))).toBe(true);
    expect(fs.existsSync(path.join(OUT, "cli-growth.png"))).toBe(true);
  });

  it("renders via a spec file", () => {
    const specPath = path.join(OUT, "spec.json");
    fs.writeFileSync(
      specPath,
      JSON.stringify({
        inputs: [path.join(FIXTURES, "kdv_l2_bound.csv")],
        kind: "plateau",
        out: path.join(OUT, "cli-plateau"),
      }),
    );
    expect(main(["render", "--spec", specPath])).toBe(0);
    expect(fs.existsSync(path.join(OUT, "cli-plateau.png"))).toBe(true);
  });

  it("exits 2 on schema mismatch with a column diagnostic", () => {
    const badPath = path.join(OUT, "bad.csv");
    fs.writeFileSync(badPath, "experiment,rung_index\ne,0\n");
    const code = main([
      "render", badPath, "--kind", "growth", "--out", path.join(OUT, "bad"),
    ]);
    expect(code).toBe(2);
  });

  it("exits 2 on an empty but valid CSV", () => {
    const emptyPath = path.join(OUT, "empty.csv");
    fs.writeFileSync(emptyPath, "experiment,rung_index,n_max,alpha,s,trial,seed,value\n");
    const code = main([
      "render", emptyPath, "--kind", "growth", "--out", path.join(OUT, "empty"),
    ]);
    expect(code).toBe(2);
  });
});
