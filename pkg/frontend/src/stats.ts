// Client-side correlation readout.  Works on two API series aligned by date;
// the UI never derives numbers from anything but API responses.

import type { SeriesPoint } from "./api.js";

/**
 * Pearson r over paired values.  Returns null (rendered as "n/a") instead of
 * throwing: short input and zero variance are ordinary UI states, not bugs.
 */
export function pearson(x: number[], y: number[]): number | null {
  const n = x.length;
  if (n !== y.length || n < 2) return null;
  let mx = 0;
  let my = 0;
  for (let i = 0; i < n; i++) {
    mx += x[i]!;
    my += y[i]!;
  }
  mx /= n;
  my /= n;
  let sxy = 0;
  let sxx = 0;
  let syy = 0;
  for (let i = 0; i < n; i++) {
    const dx = x[i]! - mx;
    const dy = y[i]! - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx === 0 || syy === 0) return null;
  let den = Math.sqrt(sxx * syy);
  if (den === 0) den = Math.sqrt(sxx) * Math.sqrt(syy); // product underflowed
  if (den === 0) return null;
  const r = sxy / den;
  return Math.max(-1, Math.min(1, r));
}

/** Inner-join two series on date, then correlate. */
export function seriesCorrelation(a: SeriesPoint[], b: SeriesPoint[]): number | null {
  const byDate = new Map<string, number>();
  for (const p of a) byDate.set(p.date, p.value);
  const xs: number[] = [];
  const ys: number[] = [];
  for (const p of b) {
    const v = byDate.get(p.date);
    if (v !== undefined) {
      xs.push(v);
      ys.push(p.value);
    }
  }
  return pearson(xs, ys);
}

export function formatRatio(value: number | null): string {
  return value === null ? "n/a" : `${value.toFixed(2)}x`;
}

export function formatShare(value: number): string {
  return `${(value * 100).toFixed(1)}%`;
}

export function formatCorrelation(value: number | null): string {
  return value === null ? "r = n/a" : `r = ${value.toFixed(3)}`;
}
