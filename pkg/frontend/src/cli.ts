/**
 * Command line: plot --in PATH --out PATH [--threshold F]
 *
 * Reads the sweep CSV, validates its schema, renders the faceted figure
 * and writes it as SVG. Nothing is written when validation or rendering
 * fails. Exit codes: 0 success, 1 runtime/data failure, 2 usage error.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { parseArgs } from "node:util";

import { parseSweepCsv, SchemaError } from "./schema.js";
import { renderFigure } from "./render.js";

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        in: { type: "string" },
        out: { type: "string" },
        threshold: { type: "string" },
      },
    });
  } catch (err) {
    console.error(`usage error: ${(err as Error).message}`);
    return 2;
  }
  const [command] = parsed.positionals;
  if (command !== "plot") {
    console.error("usage: repeatersim-plot plot --in sweep.csv --out figure.svg [--threshold 0.83]");
    return 2;
  }
  const { in: inPath, out: outPath, threshold: thresholdRaw } = parsed.values;
  if (!inPath || !outPath) {
    console.error("usage error: both --in and --out are required");
    return 2;
  }
  let threshold = 0.83;
  if (thresholdRaw !== undefined) {
    threshold = Number(thresholdRaw);
    if (Number.isNaN(threshold) || threshold < 0 || threshold > 1) {
      console.error(`usage error: --threshold must be in [0, 1], got '${thresholdRaw}'`);
      return 2;
    }
  }

  let text: string;
  try {
    text = readFileSync(inPath, "utf-8");
  } catch (err) {
    console.error(`error: cannot read ${inPath}: ${(err as Error).message}`);
    return 1;
  }
  try {
    const rows = parseSweepCsv(text);
    const svg = renderFigure(rows, { threshold });
    writeFileSync(outPath, svg, "utf-8");
    console.error(`wrote ${outPath} (${rows.length} records)`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema error: ${err.message}`);
    } else {
      console.error(`error: ${(err as Error).message}`);
    }
    return 1;
  }
}

if (process.argv[1] && /cli\.(js|ts)$/.test(process.argv[1])) {
  process.exit(main(process.argv.slice(2)));
}
