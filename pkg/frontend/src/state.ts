// View state <-> URL query string.  The entire dashboard view is recoverable
// from the address bar: signals shown, window, granularity, overlay, region,
// and any bias-label filter.  encode(decode(s)) and decode(encode(v)) must
// round-trip exactly, so normalization lives in decode only.

import type { Granularity } from "./api.js";

// A signal names one plottable series.  Forms:
//   "articles"                    article volume
//   "cases" | "deaths"            outbreak series for the selected region
//   "bias:Left"                   per-label article counts
//   "mobility:US/parks"           mobility change for region/category
//   "distancing:NY"               distancing grade numeric series
//   "trends:fever/NY"             search interest for keyword/state
export type Signal = string;

export interface ViewState {
  signals: Signal[];
  region: string;
  granularity: Granularity;
  from: string | null; // ISO date or null for "start of coverage"
  to: string | null;
  overlay: Signal | null; // second-axis series, independent unit
  biasFilter: string | null; // label selected in the bias panel
}

export const DEFAULT_VIEW: ViewState = {
  signals: ["articles"],
  region: "US",
  granularity: "daily",
  from: null,
  to: null,
  overlay: null,
  biasFilter: null,
};

const GRANULARITIES: Granularity[] = ["daily", "weekly"];
const MAX_SIGNALS = 6; // chart cap; extras are dropped at decode time

function isIsoDate(s: string): boolean {
  if (!/^\d{4}-\d{2}-\d{2}$/.test(s)) return false;
  const t = Date.parse(`${s}T00:00:00Z`);
  return !Number.isNaN(t);
}

export function encodeView(view: ViewState): string {
  const params = new URLSearchParams();
  if (view.signals.length) params.set("s", view.signals.join(","));
  if (view.region !== DEFAULT_VIEW.region) params.set("region", view.region);
  if (view.granularity !== DEFAULT_VIEW.granularity) params.set("g", view.granularity);
  if (view.from) params.set("from", view.from);
  if (view.to) params.set("to", view.to);
  if (view.overlay) params.set("overlay", view.overlay);
  if (view.biasFilter) params.set("bias", view.biasFilter);
  return params.toString();
}

export function decodeView(query: string): ViewState {
  const params = new URLSearchParams(query);
  const view: ViewState = { ...DEFAULT_VIEW, signals: [...DEFAULT_VIEW.signals] };

  const rawSignals = params.get("s");
  if (rawSignals !== null) {
    const signals = rawSignals
      .split(",")
      .map((s) => s.trim())
      .filter((s) => s.length > 0)
      .slice(0, MAX_SIGNALS);
    view.signals = signals.length ? signals : [...DEFAULT_VIEW.signals];
  }

  const region = params.get("region");
  if (region) view.region = region;

  const g = params.get("g");
  if (g && (GRANULARITIES as string[]).includes(g)) view.granularity = g as Granularity;

  const from = params.get("from");
  if (from && isIsoDate(from)) view.from = from;
  const to = params.get("to");
  if (to && isIsoDate(to)) view.to = to;
  // An inverted window is meaningless; drop it rather than error.
  if (view.from && view.to && view.from > view.to) {
    view.from = null;
    view.to = null;
  }

  const overlay = params.get("overlay");
  if (overlay) view.overlay = overlay;

  const bias = params.get("bias");
  if (bias) view.biasFilter = bias;

  return view;
}

export function viewsEqual(a: ViewState, b: ViewState): boolean {
  return (
    a.signals.length === b.signals.length &&
    a.signals.every((s, i) => s === b.signals[i]) &&
    a.region === b.region &&
    a.granularity === b.granularity &&
    a.from === b.from &&
    a.to === b.to &&
    a.overlay === b.overlay &&
    a.biasFilter === b.biasFilter
  );
}
