import { describe, expect, it } from "vitest";

import { EXPECTED_HEADER, parseSweepCsv, SchemaError } from "../src/schema.js";
import { makeSweepCsv } from "./util.js";

const HEADER = EXPECTED_HEADER.join(",");

describe("parseSweepCsv", () => {
  it("parses a full 450-row sweep", () => {
    const rows = parseSweepCsv(makeSweepCsv());
    expect(rows).toHaveLength(450);
    expect(rows[0]).toMatchObject({ strategy: "0g", hops: 2 });
  });

  it("rejects an empty file", () => {
    expect(() => parseSweepCsv("")).toThrow(SchemaError);
  });

  it("rejects a header-only file", () => {
    expect(() => parseSweepCsv(HEADER + "\n")).toThrow(/no data rows/);
  });

  it("rejects a wrong header naming the column", () => {
    const bad = HEADER.replace("lambda_gate", "gate_error");
    expect(() => parseSweepCsv(bad + "\n")).toThrow(/lambda_gate/);
  });

  it("rejects missing columns naming the first absent one", () => {
    const bad = EXPECTED_HEADER.slice(0, 5).join(",");
    expect(() => parseSweepCsv(bad + "\n")).toThrow(/fidelity/);
  });

  it("rejects extra columns", () => {
    expect(() => parseSweepCsv(HEADER + ",bonus\n")).toThrow(/bonus/);
  });

  it("rejects non-numeric fields naming the column", () => {
    const row = "0g,2,zero,0,100,0.9,0.89,0.91,12,1";
    expect(() => parseSweepCsv(`${HEADER}\n${row}\n`)).toThrow(/lambda_gate/);
  });

  it("rejects unknown strategies", () => {
    const row = "3g,2,0,0,100,0.9,0.89,0.91,12,1";
    expect(() => parseSweepCsv(`${HEADER}\n${row}\n`)).toThrow(/strategy/);
  });

  it("rejects duplicate grid points", () => {
    const row = "0g,2,0,0,100,0.9,0.89,0.91,12,1";
    expect(() => parseSweepCsv(`${HEADER}\n${row}\n${row}\n`)).toThrow(/duplicate/);
  });

  it("rejects short rows", () => {
    expect(() => parseSweepCsv(`${HEADER}\n0g,2,0\n`)).toThrow(/fields/);
  });
});
