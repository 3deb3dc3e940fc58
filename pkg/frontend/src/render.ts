/**
 * SVG rendering of the sweep figure.
 *
 * Layout mirrors the study's presentation: an upper facet grid of fidelity
 * versus gate error (rows = hop counts, columns = measurement error rates,
 * one line per strategy, dashed horizontal reference line), and a lower
 * facet grid of throughput on a logarithmic axis. Output is a plain SVG
 * string, a pure function of the parsed table.
 */

import { STRATEGIES, STRATEGY_LABELS, SweepRow, Strategy } from "./schema.js";

export interface PlotOptions {
  threshold?: number; // reference fidelity, default 0.83
}

const COLORS: Record<Strategy, string> = {
  "0g": "#1f77b4",
  "1g": "#ff7f0e",
  "e2e-1g": "#2ca02c",
  "2g": "#d62728",
  "hg-pe": "#9467bd",
  "e2e-hg-pe": "#8c564b",
};

const PANEL_W = 168;
const PANEL_H = 120;
const PANEL_GAP_X = 16;
const PANEL_GAP_Y = 26;
const MARGIN_LEFT = 64;
const MARGIN_TOP = 46;
const SECTION_GAP = 64;
const LEGEND_H = 34;

function uniqueSorted(values: number[]): number[] {
  return [...new Set(values)].sort((a, b) => a - b);
}

function fmt(x: number): string {
  return Number(x.toPrecision(6)).toString();
}

class LinearScale {
  constructor(
    readonly lo: number,
    readonly hi: number,
    readonly rLo: number,
    readonly rHi: number,
  ) {}

  map(v: number): number {
    if (this.hi === this.lo) {
      return (this.rLo + this.rHi) / 2;
    }
    return this.rLo + ((v - this.lo) / (this.hi - this.lo)) * (this.rHi - this.rLo);
  }
}

class LogScale {
  constructor(
    readonly lo: number,
    readonly hi: number,
    readonly rLo: number,
    readonly rHi: number,
  ) {}

  map(v: number): number {
    const [a, b] = [Math.log10(this.lo), Math.log10(this.hi)];
    if (a === b) {
      return (this.rLo + this.rHi) / 2;
    }
    return this.rLo + ((Math.log10(v) - a) / (b - a)) * (this.rHi - this.rLo);
  }

  ticks(): number[] {
    const out: number[] = [];
    for (let e = Math.floor(Math.log10(this.lo)); e <= Math.ceil(Math.log10(this.hi)); e++) {
      const v = 10 ** e;
      if (v >= this.lo / 1.0001 && v <= this.hi * 1.0001) {
        out.push(v);
      }
    }
    return out.length ? out : [this.lo];
  }
}

interface Panel {
  hops: number;
  pMeas: number;
  x: number;
  y: number;
}

function panelGrid(hopsValues: number[], pMeasValues: number[], yOffset: number): Panel[] {
  const panels: Panel[] = [];
  hopsValues.forEach((h, r) => {
    pMeasValues.forEach((m, c) => {
      panels.push({
        hops: h,
        pMeas: m,
        x: MARGIN_LEFT + c * (PANEL_W + PANEL_GAP_X),
        y: yOffset + r * (PANEL_H + PANEL_GAP_Y),
      });
    });
  });
  return panels;
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function lineFor(
  rows: SweepRow[],
  strategy: Strategy,
  value: (r: SweepRow) => number,
  xScale: LinearScale,
  yMap: (v: number) => number | null,
): string {
  const pts = rows
    .filter((r) => r.strategy === strategy)
    .sort((a, b) => a.lambdaGate - b.lambdaGate)
    .map((r) => {
      const y = yMap(value(r));
      return y === null ? null : `${fmt(xScale.map(r.lambdaGate))},${fmt(y)}`;
    })
    .filter((p): p is string => p !== null);
  if (pts.length === 0) {
    return "";
  }
  const marks = pts
    .map((p) => {
      const [x, y] = p.split(",");
      return `<circle cx="${x}" cy="${y}" r="2" fill="${COLORS[strategy]}"/>`;
    })
    .join("");
  if (pts.length === 1) {
    return marks;
  }
  return (
    `<polyline fill="none" stroke="${COLORS[strategy]}" stroke-width="1.4" ` +
    `points="${pts.join(" ")}"/>` + marks
  );
}

/** Render the full two-section figure; throws if the table is empty. */
export function renderFigure(rows: SweepRow[], options: PlotOptions = {}): string {
  if (rows.length === 0) {
    throw new Error("cannot render an empty sweep table");
  }
  const threshold = options.threshold ?? 0.83;
  const hopsValues = uniqueSorted(rows.map((r) => r.hops));
  const pMeasValues = uniqueSorted(rows.map((r) => r.pMeas));
  const lambdaValues = uniqueSorted(rows.map((r) => r.lambdaGate));

  const gridW = pMeasValues.length * (PANEL_W + PANEL_GAP_X) - PANEL_GAP_X;
  const gridH = hopsValues.length * (PANEL_H + PANEL_GAP_Y) - PANEL_GAP_Y;
  const width = MARGIN_LEFT + gridW + 24;
  const fidelityTop = MARGIN_TOP + LEGEND_H;
  const throughputTop = fidelityTop + gridH + SECTION_GAP;
  const height = throughputTop + gridH + 48;

  const xScale = new LinearScale(
    lambdaValues[0],
    lambdaValues[lambdaValues.length - 1],
    10,
    PANEL_W - 8,
  );

  const positiveThroughputs = rows.map((r) => r.throughput).filter((v) => v > 0);
  const thrLo = positiveThroughputs.length ? Math.min(...positiveThroughputs) : 1;
  const thrHi = positiveThroughputs.length ? Math.max(...positiveThroughputs) : 10;
  const logScale = new LogScale(thrLo, Math.max(thrHi, thrLo * 1.0001), PANEL_H - 16, 8);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  parts.push(
    `<text x="${MARGIN_LEFT}" y="24" font-size="15">End-to-end fidelity and throughput ` +
      `by strategy (columns: measurement error, rows: hops)</text>`,
  );

  // legend: always all six strategies
  let lx = MARGIN_LEFT;
  const ly = 38;
  const legendItems: string[] = [];
  for (const s of STRATEGIES) {
    legendItems.push(
      `<g class="legend-item">` +
        `<line x1="${lx}" y1="${ly}" x2="${lx + 18}" y2="${ly}" ` +
        `stroke="${COLORS[s]}" stroke-width="2.5"/>` +
        `<text x="${lx + 22}" y="${ly + 4}" font-size="11">${esc(STRATEGY_LABELS[s])}</text>` +
        `</g>`,
    );
    lx += 30 + 9 * STRATEGY_LABELS[s].length;
  }
  parts.push(legendItems.join(""));

  const fidelityScale = new LinearScale(0, 1, PANEL_H - 16, 8);

  const sections: Array<{
    cls: string;
    top: number;
    title: string;
    yMap: (v: number) => number | null;
    yTicks: Array<{ v: number; label: string }>;
    value: (r: SweepRow) => number;
    reference?: number;
  }> = [
    {
      cls: "fidelity",
      top: fidelityTop,
      title: "Fidelity vs gate error",
      yMap: (v) => fidelityScale.map(v),
      yTicks: [0, 0.25, 0.5, 0.75, 1].map((v) => ({ v, label: fmt(v) })),
      value: (r) => r.fidelity,
      reference: threshold,
    },
    {
      cls: "throughput",
      top: throughputTop,
      title: "Throughput (pairs/s, log scale) vs gate error",
      yMap: (v) => (v > 0 ? logScale.map(v) : null),
      yTicks: logScale.ticks().map((v) => ({ v: logScale.map(v), label: fmt(v) })),
      value: (r) => r.throughput,
    },
  ];

  for (const section of sections) {
    parts.push(
      `<text x="${MARGIN_LEFT}" y="${section.top - 10}" font-size="13" ` +
        `font-weight="bold">${esc(section.title)}</text>`,
    );
    for (const panel of panelGrid(hopsValues, pMeasValues, section.top)) {
      const rowsHere = rows.filter(
        (r) => r.hops === panel.hops && r.pMeas === panel.pMeas,
      );
      const inner: string[] = [];
      inner.push(
        `<rect x="0" y="0" width="${PANEL_W}" height="${PANEL_H}" fill="#fafafa" ` +
          `stroke="#999" stroke-width="0.8"/>`,
      );
      inner.push(
        `<text x="4" y="-4" font-size="10" fill="#333">hops=${panel.hops}, ` +
          `p_meas=${fmt(panel.pMeas)}</text>`,
      );
      if (section.cls === "fidelity" && section.yTicks.length) {
        for (const t of [0, 0.5, 1]) {
          const y = fidelityScale.map(t);
          inner.push(
            `<text x="-6" y="${fmt(y + 3)}" font-size="8" text-anchor="end" ` +
              `fill="#555">${fmt(t)}</text>`,
          );
        }
      }
      if (section.cls === "throughput") {
        for (const t of logScale.ticks()) {
          const y = logScale.map(t);
          inner.push(
            `<line x1="0" y1="${fmt(y)}" x2="${PANEL_W}" y2="${fmt(y)}" ` +
              `stroke="#ddd" stroke-width="0.5" class="log-tick"/>`,
          );
          inner.push(
            `<text x="-6" y="${fmt(y + 3)}" font-size="8" text-anchor="end" ` +
              `fill="#555">${fmt(t)}</text>`,
          );
        }
      }
      // x tick labels: gate error values
      for (const lv of lambdaValues) {
        inner.push(
          `<text x="${fmt(xScale.map(lv))}" y="${PANEL_H + 10}" font-size="7" ` +
            `text-anchor="middle" fill="#555">${fmt(lv)}</text>`,
        );
      }
      if (section.reference !== undefined) {
        const y = fidelityScale.map(section.reference);
        inner.push(
          `<line x1="0" y1="${fmt(y)}" x2="${PANEL_W}" y2="${fmt(y)}" ` +
            `stroke="#444" stroke-width="1" stroke-dasharray="5 3" class="reference-line"/>`,
        );
      }
      for (const s of STRATEGIES) {
        inner.push(lineFor(rowsHere, s, section.value, xScale, section.yMap));
      }
      parts.push(
        `<g class="panel ${section.cls}" transform="translate(${panel.x},${panel.y})">` +
          inner.join("") +
          `</g>`,
      );
    }
  }
  parts.push(
    `<text x="${MARGIN_LEFT + gridW / 2}" y="${height - 14}" font-size="11" ` +
      `text-anchor="middle">gate error rate per operation</text>`,
  );
  parts.push("</svg>");
  return parts.join("\n");
}
