// Bias panel against the fixture-backed API payloads: the same JSON the
// server's seeded test store returns for /v1/bias/shares and /v1/bias/ratios.
// The planted ratios are Scientific 0.68 and Right 1.15; everything else has
// no baseline presence and must show as "n/a".

import { describe, expect, it } from "vitest";

import { ApiClient, type BiasRatios, type BiasShares } from "../src/api.js";
import { LABEL_ORDER, renderBiasPanel, renderKeywordPanel } from "../src/panels.js";

const FIXTURE_SHARES: BiasShares = {
  "Left": 0.75, "Left-center": 0.0, "Least Biased": 0.0,
  "Right-center": 0.0, "Right": 0.0, "Scientific": 0.25,
  "Questionable Sources": 0.0, "Conspiracy-pseudoscience": 0.0,
  "Mixed": 0.0, "Unrated": 0.0,
};

const FIXTURE_RATIOS: BiasRatios = {
  "Left": null, "Left-center": null, "Least Biased": null,
  "Right-center": null, "Right": 1.15, "Scientific": 0.68,
  "Questionable Sources": null, "Conspiracy-pseudoscience": null,
  "Mixed": null, "Unrated": null,
};

function jsonResponse(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

/** Serves the fixture store's bias payloads like the real server would. */
function fixtureFetch(url: string): Promise<Response> {
  const path = url.split("?")[0];
  if (path === "/v1/bias/shares") return Promise.resolve(jsonResponse(FIXTURE_SHARES));
  if (path === "/v1/bias/ratios") return Promise.resolve(jsonResponse(FIXTURE_RATIOS));
  return Promise.resolve(
    jsonResponse({ error: "not_found", message: `no such route: ${path}` }, 404),
  );
}

async function renderFromApi() {
  const api = new ApiClient("", fixtureFetch);
  const [shares, ratios] = await Promise.all([api.biasShares(), api.biasRatios()]);
  return renderBiasPanel(shares, ratios);
}

function rowFor(panel: HTMLElement, label: string): HTMLElement {
  const row = panel.querySelector<HTMLElement>(`.bias-row[data-label="${label}"]`);
  if (!row) throw new Error(`no row for ${label}`);
  return row;
}

describe("bias panel with fixture API data", () => {
  it("displays 0.68x and 1.15x for the planted ratios", async () => {
    const panel = await renderFromApi();
    expect(rowFor(panel, "Scientific").querySelector(".bias-ratio")!.textContent).toBe("0.68x");
    expect(rowFor(panel, "Right").querySelector(".bias-ratio")!.textContent).toBe("1.15x");
  });

  it("marks under- and over-representation directionally", async () => {
    const panel = await renderFromApi();
    expect(rowFor(panel, "Scientific").querySelector(".bias-ratio")!.className).toContain("under");
    expect(rowFor(panel, "Right").querySelector(".bias-ratio")!.className).toContain("over");
  });

  it("shows an n/a badge for every label without a computable ratio", async () => {
    const panel = await renderFromApi();
    const naLabels = LABEL_ORDER.filter((l) => FIXTURE_RATIOS[l] === null);
    expect(naLabels).toHaveLength(8);
    for (const label of naLabels) {
      const badge = rowFor(panel, label).querySelector(".bias-ratio")!;
      expect(badge.textContent).toBe("n/a");
      expect(badge.className).toContain("na");
    }
  });

  it("renders shares as percentages with one row per label", async () => {
    const panel = await renderFromApi();
    expect(panel.querySelectorAll(".bias-row")).toHaveLength(10);
    expect(rowFor(panel, "Left").querySelector(".bias-share")!.textContent).toBe("75.0%");
    expect(rowFor(panel, "Scientific").querySelector(".bias-share")!.textContent).toBe("25.0%");
    expect(rowFor(panel, "Unrated").querySelector(".bias-share")!.textContent).toBe("0.0%");
  });

  it("reports the clicked label so the chart can filter to it", async () => {
    const selections: (string | null)[] = [];
    const panel = renderBiasPanel(FIXTURE_SHARES, FIXTURE_RATIOS, {
      onSelect: (label) => selections.push(label),
    });
    rowFor(panel, "Scientific").dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(selections).toEqual(["Scientific"]);
  });

  it("clears the filter when the selected row is clicked again", async () => {
    const selections: (string | null)[] = [];
    const panel = renderBiasPanel(FIXTURE_SHARES, FIXTURE_RATIOS, {
      selected: "Scientific",
      onSelect: (label) => selections.push(label),
    });
    expect(rowFor(panel, "Scientific").className).toContain("selected");
    rowFor(panel, "Scientific").dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(selections).toEqual([null]);
  });
});

describe("keyword panel", () => {
  it("lists keyword and count pairs in rank order", () => {
    const panel = renderKeywordPanel([
      { keyword: "case", count: 42 },
      { keyword: "covid", count: 42 },
      { keyword: "say", count: 17 },
    ]);
    const rows = [...panel.querySelectorAll(".keyword-row")].map((r) => r.textContent);
    expect(rows).toEqual(["case42", "covid42", "say17"]);
  });
});
