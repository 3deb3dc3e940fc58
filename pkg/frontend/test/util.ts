import { EXPECTED_HEADER, STRATEGIES } from "../src/schema.js";

export const HOPS = [2, 4, 8];
export const LAMBDAS = [0, 0.0005, 0.001, 0.0015, 0.002];
export const P_MEAS = [0, 0.0025, 0.005, 0.0075, 0.01];

/** Deterministic synthetic sweep covering the full 450-point grid. */
export function makeSweepCsv(): string {
  const lines = [EXPECTED_HEADER.join(",")];
  for (const s of STRATEGIES) {
    const base = 0.55 + 0.06 * STRATEGIES.indexOf(s);
    for (const h of HOPS) {
      for (const lam of LAMBDAS) {
        for (const pm of P_MEAS) {
          const fid = Math.max(
            0.05,
            base - 0.02 * h / 2 - 60 * lam - 4 * pm,
          );
          const thr = 10 ** (1 + STRATEGIES.indexOf(s) * 0.3 + h / 8);
          lines.push(
            [
              s,
              h,
              lam,
              pm,
              1000,
              fid.toFixed(6),
              (fid - 0.01).toFixed(6),
              (fid + 0.01).toFixed(6),
              thr.toFixed(4),
              7,
            ].join(","),
          );
        }
      }
    }
  }
  return lines.join("\n") + "\n";
}
