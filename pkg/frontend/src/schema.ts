/**
 * Parsing and validation of the sweep table.
 *
 * The input is the CSV written by the simulator CLI; its header must match
 * the expected schema exactly (same columns, same order). Any deviation is
 * reported by column name rather than silently tolerated.
 */

export const EXPECTED_HEADER = [
  "strategy",
  "hops",
  "lambda_gate",
  "p_meas",
  "n_trials",
  "fidelity",
  "fid_ci_low",
  "fid_ci_high",
  "throughput_pairs_per_s",
  "seed",
] as const;

export const STRATEGIES = ["0g", "1g", "e2e-1g", "2g", "hg-pe", "e2e-hg-pe"] as const;
export type Strategy = (typeof STRATEGIES)[number];

export const STRATEGY_LABELS: Record<Strategy, string> = {
  "0g": "0G",
  "1g": "1G",
  "e2e-1g": "E2E-1G",
  "2g": "2G",
  "hg-pe": "HG-PE",
  "e2e-hg-pe": "E2E-HG-PE",
};

export interface SweepRow {
  strategy: Strategy;
  hops: number;
  lambdaGate: number;
  pMeas: number;
  nTrials: number;
  fidelity: number;
  fidCiLow: number;
  fidCiHigh: number;
  throughput: number;
  seed: number;
}

export class SchemaError extends Error {}

function parseNumber(raw: string, column: string, line: number): number {
  const v = Number(raw);
  if (raw.trim() === "" || Number.isNaN(v)) {
    throw new SchemaError(
      `line ${line}: column '${column}' has non-numeric value '${raw}'`,
    );
  }
  return v;
}

/** Parse the sweep CSV; throws SchemaError naming the offending column. */
export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text
    .split(/\r?\n/)
    .map((s) => s.trim())
    .filter((s) => s.length > 0);
  if (lines.length === 0) {
    throw new SchemaError("input is empty: no header line");
  }
  const header = lines[0].split(",").map((s) => s.trim());
  for (let i = 0; i < EXPECTED_HEADER.length; i++) {
    if (header[i] !== EXPECTED_HEADER[i]) {
      throw new SchemaError(
        `header mismatch at position ${i}: expected column '${EXPECTED_HEADER[i]}', ` +
          `got '${header[i] ?? "(missing)"}'`,
      );
    }
  }
  if (header.length > EXPECTED_HEADER.length) {
    throw new SchemaError(
      `unexpected extra column '${header[EXPECTED_HEADER.length]}'`,
    );
  }
  if (lines.length === 1) {
    throw new SchemaError("input has a header but no data rows");
  }

  const rows: SweepRow[] = [];
  const seen = new Set<string>();
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== EXPECTED_HEADER.length) {
      throw new SchemaError(
        `line ${i + 1}: expected ${EXPECTED_HEADER.length} fields, got ${parts.length}`,
      );
    }
    const strategy = parts[0].trim();
    if (!(STRATEGIES as readonly string[]).includes(strategy)) {
      throw new SchemaError(
        `line ${i + 1}: column 'strategy' has unknown value '${strategy}'`,
      );
    }
    const row: SweepRow = {
      strategy: strategy as Strategy,
      hops: parseNumber(parts[1], "hops", i + 1),
      lambdaGate: parseNumber(parts[2], "lambda_gate", i + 1),
      pMeas: parseNumber(parts[3], "p_meas", i + 1),
      nTrials: parseNumber(parts[4], "n_trials", i + 1),
      fidelity: parseNumber(parts[5], "fidelity", i + 1),
      fidCiLow: parseNumber(parts[6], "fid_ci_low", i + 1),
      fidCiHigh: parseNumber(parts[7], "fid_ci_high", i + 1),
      throughput: parseNumber(parts[8], "throughput_pairs_per_s", i + 1),
      seed: parseNumber(parts[9], "seed", i + 1),
    };
    const key = `${row.strategy}|${row.hops}|${row.lambdaGate}|${row.pMeas}`;
    if (seen.has(key)) {
      throw new SchemaError(`line ${i + 1}: duplicate grid point ${key}`);
    }
    seen.add(key);
    rows.push(row);
  }
  return rows;
}
