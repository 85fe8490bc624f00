#!/usr/bin/env node
/** smoothlab-render: turn experiment CSVs into figures.
 *
 *   smoothlab-render render --spec figure.json
 *   smoothlab-render render results.csv --kind growth --out out/figure
 *
 * Exit codes: 0 success, 2 schema/spec problem (with a column diagnostic),
 * 1 anything else.
 */

import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { KINDS, figureSpecSchema } from "./figures";
import { SchemaError } from "./schema";
import { loadSpec, render } from "./render";

export function main(argv: string[]): number {
  const parsed = yargs(argv)
    .command("render [inputs..]", "render a figure from experiment CSVs", (y) =>
      y
        .positional("inputs", { type: "string", array: true, describe: "CSV paths" })
        .option("spec", { type: "string", describe: "figure spec JSON path" })
        .option("kind", { type: "string", choices: KINDS as unknown as string[] })
        .option("out", { type: "string", describe: "output base path (no extension)" })
        .option("style-seed", { type: "number", default: 0 }),
    )
    .demandCommand(1)
    .strict()
    .exitProcess(false)
    .fail((msg, err) => {
      throw err ?? new Error(msg);
    })
    .parseSync();

  try {
    const spec = parsed.spec
      ? loadSpec(String(parsed.spec))
      : figureSpecSchema.parse({
          inputs: (parsed.inputs as string[]) ?? [],
          kind: parsed.kind,
          out: parsed.out,
          styleSeed: parsed["style-seed"],
        });
    const result = render(spec);
    console.log(`wrote ${result.svgPath} and ${result.pngPath}`);
    for (const line of result.figure.model.annotations) {
      console.log(`  ${line}`);
    }
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema error: ${(err as Error).message}`);
      return 2;
    }
    if (err instanceof Error && err.name === "ZodError") {
      console.error(`spec error: ${err.message}`);
      return 2;
    }
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(hideBin(process.argv)));
}
