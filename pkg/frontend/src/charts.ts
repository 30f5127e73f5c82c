// Hand-rolled SVG line charts.  No charting dependency: the shapes we need
// are one multi-series time axis plus an optional second y-axis for an
// overlay series in different units (counts vs. cases, counts vs. percent).

import type { SeriesPoint } from "./api.js";

export interface ChartSeries {
  label: string;
  points: SeriesPoint[];
  axis?: "left" | "right"; // right = overlay unit
}

export const MAX_SERIES = 6;

export const PALETTE = [
  "#2563eb", // blue
  "#dc2626", // red
  "#16a34a", // green
  "#9333ea", // purple
  "#ea580c", // orange
  "#0891b2", // cyan
];
const OVERLAY_COLOR = "#64748b";

const WIDTH = 900;
const HEIGHT = 360;
const MARGIN = { top: 16, right: 64, bottom: 36, left: 64 };

const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
  return el;
}

function text(x: number, y: number, content: string, attrs: Record<string, string> = {}): SVGTextElement {
  const el = svgEl("text", { x: String(x), y: String(y), "font-size": "11", fill: "#475569", ...attrs });
  el.textContent = content;
  return el;
}

interface Scale {
  (v: number): number;
  min: number;
  max: number;
}

function linearScale(min: number, max: number, rangeLo: number, rangeHi: number): Scale {
  const span = max - min || 1; // flat series still gets a line mid-chart
  const fn = ((v: number) => rangeLo + ((v - min) / span) * (rangeHi - rangeLo)) as Scale;
  fn.min = min;
  fn.max = max;
  return fn;
}

function valueBounds(series: ChartSeries[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const s of series) {
    for (const p of s.points) {
      if (p.value < lo) lo = p.value;
      if (p.value > hi) hi = p.value;
    }
  }
  if (lo === Infinity) return [0, 1];
  if (lo > 0) lo = 0; // count-like series read better anchored at zero
  return [lo, hi];
}

function ticks(lo: number, hi: number, n = 4): number[] {
  const out: number[] = [];
  for (let i = 0; i <= n; i++) out.push(lo + ((hi - lo) * i) / n);
  return out;
}

function fmtTick(v: number): string {
  if (Math.abs(v) >= 1000) return `${Math.round(v / 100) / 10}k`;
  if (Number.isInteger(v)) return String(v);
  return v.toFixed(2);
}

/**
 * Render up to MAX_SERIES line series against a shared date axis.  Series
 * flagged axis:"right" share a second scale drawn on the right edge; the
 * right axis appears only when such a series is present.
 */
export function renderChart(input: ChartSeries[]): SVGSVGElement {
  const series = input.slice(0, MAX_SERIES);
  const svg = svgEl("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    width: "100%",
    role: "img",
    class: "chart",
  });

  const dates = Array.from(new Set(series.flatMap((s) => s.points.map((p) => p.date)))).sort();
  if (dates.length === 0) {
    const empty = text(WIDTH / 2, HEIGHT / 2, "no data in window", {
      "text-anchor": "middle",
      "font-size": "14",
      class: "empty",
    });
    svg.appendChild(empty);
    return svg;
  }

  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;

  const xIndex = new Map(dates.map((d, i) => [d, i]));
  const xScale = (d: string) =>
    dates.length === 1 ? (x0 + x1) / 2 : x0 + ((xIndex.get(d) ?? 0) / (dates.length - 1)) * (x1 - x0);

  const leftSeries = series.filter((s) => s.axis !== "right");
  const rightSeries = series.filter((s) => s.axis === "right");

  const [llo, lhi] = valueBounds(leftSeries.length ? leftSeries : series);
  const leftScale = linearScale(llo, lhi, y0, y1);
  const rightScale = rightSeries.length
    ? linearScale(...valueBounds(rightSeries), y0, y1)
    : null;

  // left axis
  const leftAxis = svgEl("g", { class: "axis axis-left" });
  for (const t of ticks(leftScale.min, leftScale.max)) {
    const y = leftScale(t);
    leftAxis.appendChild(svgEl("line", {
      x1: String(x0), x2: String(x1), y1: String(y), y2: String(y),
      stroke: "#e2e8f0", "stroke-width": "1",
    }));
    leftAxis.appendChild(text(x0 - 8, y + 4, fmtTick(t), { "text-anchor": "end" }));
  }
  svg.appendChild(leftAxis);

  // right axis only when an overlay-unit series exists
  if (rightScale) {
    const rightAxis = svgEl("g", { class: "axis axis-right" });
    for (const t of ticks(rightScale.min, rightScale.max)) {
      const y = rightScale(t);
      rightAxis.appendChild(text(x1 + 8, y + 4, fmtTick(t), { "text-anchor": "start" }));
    }
    svg.appendChild(rightAxis);
  }

  // x axis: first / middle / last date labels
  const xAxis = svgEl("g", { class: "axis axis-x" });
  const labelIdx = dates.length < 3 ? [...dates.keys()] : [0, Math.floor(dates.length / 2), dates.length - 1];
  for (const i of labelIdx) {
    const d = dates[i]!;
    xAxis.appendChild(text(xScale(d), y0 + 20, d, { "text-anchor": "middle" }));
  }
  svg.appendChild(xAxis);

  // series paths
  let colorIdx = 0;
  for (const s of series) {
    const scale = s.axis === "right" && rightScale ? rightScale : leftScale;
    const color = s.axis === "right" ? OVERLAY_COLOR : PALETTE[colorIdx++ % PALETTE.length]!;
    const pts = [...s.points].sort((a, b) => (a.date < b.date ? -1 : 1));
    if (pts.length === 0) continue;
    const d = pts
      .map((p, i) => `${i === 0 ? "M" : "L"}${xScale(p.date).toFixed(1)},${scale(p.value).toFixed(1)}`)
      .join(" ");
    const path = svgEl("path", {
      d,
      fill: "none",
      stroke: color,
      "stroke-width": s.axis === "right" ? "1.5" : "2",
      "stroke-dasharray": s.axis === "right" ? "5 3" : "",
      class: "series",
      "data-label": s.label,
    });
    svg.appendChild(path);
  }

  // legend
  const legend = svgEl("g", { class: "legend" });
  colorIdx = 0;
  series.forEach((s, i) => {
    const color = s.axis === "right" ? OVERLAY_COLOR : PALETTE[colorIdx++ % PALETTE.length]!;
    const lx = x0 + 8 + i * 140;
    legend.appendChild(svgEl("rect", {
      x: String(lx), y: String(y1), width: "10", height: "10", fill: color,
    }));
    legend.appendChild(text(lx + 14, y1 + 9, s.label + (s.axis === "right" ? " (right)" : "")));
  });
  svg.appendChild(legend);

  return svg;
}
