// Dashboard entry point.  The URL query string is the single source of truth
// for what is on screen; every control writes back through setView() which
// re-encodes the state, and every data panel refreshes through its own
// LatestFetcher so a slow response for a superseded view can never overwrite
// a newer one.

import { ApiClient, type SeriesPoint } from "./api.js";
import { renderChart, type ChartSeries } from "./charts.js";
import { LatestFetcher } from "./fetcher.js";
import { renderBiasPanel, renderErrorBanner, renderKeywordPanel } from "./panels.js";
import { decodeView, encodeView, type Signal, type ViewState } from "./state.js";
import { formatCorrelation, seriesCorrelation } from "./stats.js";

const api = new ApiClient();

const chartFetcher = new LatestFetcher();
const biasFetcher = new LatestFetcher();
const keywordFetcher = new LatestFetcher();

let view: ViewState = decodeView(window.location.search);

function byId(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing container #${id}`);
  return node;
}

// -- signal fetching --------------------------------------------------------

async function fetchSignal(signal: Signal, v: ViewState): Promise<SeriesPoint[]> {
  const q = {
    granularity: v.granularity,
    from: v.from ?? undefined,
    to: v.to ?? undefined,
  };
  const [kind, arg = ""] = signal.split(":", 2) as [string, string?];
  switch (kind) {
    case "articles":
      return api.articles(q);
    case "cases":
      return api.cases({ ...q, region: v.region });
    case "deaths":
      return api.deaths({ ...q, region: v.region });
    case "bias": {
      const counts = await api.biasCounts(q);
      return counts[arg] ?? [];
    }
    case "mobility": {
      const [region = v.region, category = ""] = arg.split("/", 2);
      return api.mobility(region, category, q);
    }
    case "distancing":
      return api.distancing(arg, q);
    case "trends": {
      const [keyword = "", state = ""] = arg.split("/", 2);
      return api.trends(keyword, state, q);
    }
    default:
      return [];
  }
}

async function loadChartSeries(v: ViewState): Promise<ChartSeries[]> {
  // A bias-panel selection narrows the chart to that label's counts.
  const signals: Signal[] = v.biasFilter ? [`bias:${v.biasFilter}`] : v.signals;
  const loads = signals.map(async (s): Promise<ChartSeries> => ({
    label: s,
    points: await fetchSignal(s, v),
  }));
  if (v.overlay) {
    loads.push(
      fetchSignal(v.overlay, v).then((points) => ({
        label: v.overlay!,
        points,
        axis: "right" as const,
      })),
    );
  }
  return Promise.all(loads);
}

// -- rendering --------------------------------------------------------------

function drawChart(series: ChartSeries[]): void {
  const box = byId("chart");
  box.replaceChildren(renderChart(series));

  const readout = byId("readout");
  const overlay = series.find((s) => s.axis === "right");
  const primary = series.find((s) => s.axis !== "right");
  if (overlay && primary) {
    const r = seriesCorrelation(primary.points, overlay.points);
    readout.textContent = `${primary.label} vs ${overlay.label}: ${formatCorrelation(r)}`;
  } else {
    readout.textContent = "";
  }
}

function drawBias(shares: Record<string, number>, ratios: Record<string, number | null>): void {
  const box = byId("bias");
  box.replaceChildren(
    renderBiasPanel(shares, ratios, {
      selected: view.biasFilter,
      onSelect: (label) => setView({ ...view, biasFilter: label }),
    }),
  );
}

function showError(err: unknown): void {
  const status = byId("status");
  const message = err instanceof Error ? err.message : String(err);
  status.replaceChildren(renderErrorBanner(message));
}

function clearError(): void {
  byId("status").replaceChildren();
}

// -- controls ---------------------------------------------------------------

function input(id: string): HTMLInputElement {
  return byId(id) as HTMLInputElement;
}

function select(id: string): HTMLSelectElement {
  return byId(id) as HTMLSelectElement;
}

function renderControls(): void {
  input("ctl-signals").value = view.signals.join(",");
  input("ctl-region").value = view.region;
  select("ctl-granularity").value = view.granularity;
  input("ctl-from").value = view.from ?? "";
  input("ctl-to").value = view.to ?? "";
  select("ctl-overlay").value = view.overlay ?? "";
}

function readControls(): ViewState {
  return {
    ...view,
    signals: input("ctl-signals")
      .value.split(",")
      .map((s) => s.trim())
      .filter(Boolean),
    region: input("ctl-region").value.trim() || "US",
    granularity: select("ctl-granularity").value === "weekly" ? "weekly" : "daily",
    from: input("ctl-from").value || null,
    to: input("ctl-to").value || null,
    overlay: select("ctl-overlay").value || null,
  };
}

function bindControls(): void {
  byId("ctl-apply").addEventListener("click", () => setView(readControls()));
  window.addEventListener("popstate", () => {
    view = decodeView(window.location.search);
    renderControls();
    void refresh();
  });
}

// -- state transitions --------------------------------------------------------

function setView(next: ViewState): void {
  view = next;
  const query = encodeView(view);
  const url = query ? `?${query}` : window.location.pathname;
  window.history.pushState(null, "", url);
  renderControls();
  void refresh();
}

async function refresh(): Promise<void> {
  clearError();
  const v = view;
  const jobs: Promise<unknown>[] = [
    chartFetcher.run(() => loadChartSeries(v), drawChart),
    biasFetcher.run(
      () => Promise.all([api.biasShares(), api.biasRatios()] as const),
      ([shares, ratios]) => drawBias(shares, ratios),
    ),
    keywordFetcher.run(
      () => api.topKeywords(10),
      (rows) => byId("keywords").replaceChildren(renderKeywordPanel(rows)),
    ),
  ];
  const results = await Promise.allSettled(jobs);
  const failure = results.find((r) => r.status === "rejected");
  if (failure && failure.status === "rejected") {
    // Keep whatever was already drawn; just surface the failure.
    showError(failure.reason);
  }
}

export function start(): void {
  renderControls();
  bindControls();
  void refresh();
}

if (typeof document !== "undefined" && document.getElementById("chart")) {
  start();
}
