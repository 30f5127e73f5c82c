import { describe, expect, it } from "vitest";

import { MAX_SERIES, renderChart, type ChartSeries } from "../src/charts.js";

function mkSeries(label: string, values: number[], axis?: "left" | "right"): ChartSeries {
  const points = values.map((v, i) => ({
    date: `2020-03-${String(i + 2).padStart(2, "0")}`,
    value: v,
  }));
  return axis ? { label, points, axis } : { label, points };
}

describe("svg chart", () => {
  it("draws one path per series against a single left axis", () => {
    const svg = renderChart([mkSeries("articles", [5, 7, 3]), mkSeries("bias:Left", [1, 2, 0])]);
    expect(svg.querySelectorAll("path.series")).toHaveLength(2);
    expect(svg.querySelectorAll("g.axis-left")).toHaveLength(1);
    expect(svg.querySelectorAll("g.axis-right")).toHaveLength(0);
  });

  it("adds a second y-axis only when an overlay-unit series is present", () => {
    const svg = renderChart([
      mkSeries("articles", [5, 7, 3]),
      mkSeries("cases", [10, 25, 40], "right"),
    ]);
    expect(svg.querySelectorAll("g.axis-left")).toHaveLength(1);
    expect(svg.querySelectorAll("g.axis-right")).toHaveLength(1);
    const overlay = svg.querySelector('path.series[data-label="cases"]')!;
    expect(overlay.getAttribute("stroke-dasharray")).toBe("5 3");
  });

  it("caps rendering at six series", () => {
    const eight = Array.from({ length: 8 }, (_, i) => mkSeries(`s${i}`, [i, i + 1, i + 2]));
    const svg = renderChart(eight);
    expect(MAX_SERIES).toBe(6);
    expect(svg.querySelectorAll("path.series")).toHaveLength(6);
    const labels = [...svg.querySelectorAll("path.series")].map((p) => p.getAttribute("data-label"));
    expect(labels).toEqual(["s0", "s1", "s2", "s3", "s4", "s5"]);
  });

  it("shows a placeholder when the window holds no data", () => {
    const svg = renderChart([{ label: "articles", points: [] }]);
    expect(svg.querySelector("text.empty")!.textContent).toBe("no data in window");
    expect(svg.querySelectorAll("path.series")).toHaveLength(0);
  });

  it("plots a flat series without dividing by zero", () => {
    const svg = renderChart([mkSeries("articles", [4, 4, 4])]);
    const d = svg.querySelector("path.series")!.getAttribute("d")!;
    expect(d).toMatch(/^M[\d.]+,[\d.]+ L/);
    expect(d).not.toContain("NaN");
    expect(d).not.toContain("Infinity");
  });

  it("sorts points by date before building the path", () => {
    const scrambled: ChartSeries = {
      label: "articles",
      points: [
        { date: "2020-03-04", value: 3 },
        { date: "2020-03-02", value: 5 },
        { date: "2020-03-03", value: 7 },
      ],
    };
    const ordered = mkSeries("articles", [5, 7, 3]);
    const a = renderChart([scrambled]).querySelector("path.series")!.getAttribute("d");
    const b = renderChart([ordered]).querySelector("path.series")!.getAttribute("d");
    expect(a).toBe(b);
  });
});
