import { describe, expect, it } from "vitest";

import { formatCorrelation, formatRatio, pearson, seriesCorrelation } from "../src/stats.js";

describe("pearson", () => {
  it("matches known values", () => {
    expect(pearson([1, 2, 3], [2, 4, 6])).toBe(1);
    expect(pearson([1, 2, 3], [6, 4, 2])).toBe(-1);
    const r = pearson([1, 2, 4], [1, 3, 3])!;
    expect(r).toBeCloseTo(0.75592894601845, 10);
  });

  it("returns null on degenerate input instead of throwing", () => {
    expect(pearson([], [])).toBeNull();
    expect(pearson([1], [2])).toBeNull();
    expect(pearson([1, 2], [3])).toBeNull(); // length mismatch
    expect(pearson([5, 5, 5], [1, 2, 3])).toBeNull(); // zero variance
  });

  it("clamps float noise into [-1, 1]", () => {
    const x = Array.from({ length: 50 }, (_, i) => i * 0.1 + 3);
    const r = pearson(x, x)!;
    expect(r).toBeLessThanOrEqual(1);
    expect(r).toBeGreaterThan(0.999999);
  });
});

describe("seriesCorrelation", () => {
  it("inner-joins on date before correlating", () => {
    const a = [
      { date: "2020-03-02", value: 1 },
      { date: "2020-03-03", value: 2 },
      { date: "2020-03-04", value: 3 },
      { date: "2020-03-09", value: 99 }, // no partner; must be ignored
    ];
    const b = [
      { date: "2020-03-02", value: 2 },
      { date: "2020-03-03", value: 4 },
      { date: "2020-03-04", value: 6 },
      { date: "2020-03-05", value: -50 }, // no partner either
    ];
    expect(seriesCorrelation(a, b)).toBe(1);
  });

  it("returns null when fewer than two dates overlap", () => {
    const a = [{ date: "2020-03-02", value: 1 }];
    const b = [{ date: "2020-03-02", value: 2 }];
    expect(seriesCorrelation(a, b)).toBeNull();
  });
});

describe("formatting", () => {
  it("renders ratios with two decimals and an x suffix", () => {
    expect(formatRatio(0.68)).toBe("0.68x");
    expect(formatRatio(1.15)).toBe("1.15x");
    expect(formatRatio(null)).toBe("n/a");
  });

  it("renders correlations to three decimals", () => {
    expect(formatCorrelation(0.9017)).toBe("r = 0.902");
    expect(formatCorrelation(null)).toBe("r = n/a");
  });
});
