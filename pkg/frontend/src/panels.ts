// Bias breakdown panel: one row per label with its share of tagged coverage
// and its over/under-representation ratio against the baseline corpus.
// Labels with no computable ratio (absent from the baseline) get an "n/a"
// badge instead of a number.  Clicking a row filters the time-series chart
// to that label's article counts.

import type { BiasRatios, BiasShares, KeywordRow } from "./api.js";
import { formatRatio, formatShare } from "./stats.js";

// Fixed label order mirrors the API vocabulary: political axis first, then
// quality labels, catch-all last.
export const LABEL_ORDER = [
  "Left",
  "Left-center",
  "Least Biased",
  "Right-center",
  "Right",
  "Scientific",
  "Questionable Sources",
  "Conspiracy-pseudoscience",
  "Mixed",
  "Unrated",
];

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className = "",
  textContent = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (textContent) node.textContent = textContent;
  return node;
}

export interface BiasPanelOptions {
  onSelect?: (label: string | null) => void;
  selected?: string | null;
}

export function renderBiasPanel(
  shares: BiasShares,
  ratios: BiasRatios,
  opts: BiasPanelOptions = {},
): HTMLElement {
  const panel = el("section", "panel bias-panel");
  panel.appendChild(el("h2", "panel-title", "coverage by source rating"));

  // Known labels in fixed order, then anything new the API starts sending.
  const labels = [
    ...LABEL_ORDER,
    ...Object.keys({ ...shares, ...ratios }).filter((l) => !LABEL_ORDER.includes(l)),
  ];
  const maxShare = Math.max(...labels.map((l) => shares[l] ?? 0), 1e-9);
  const list = el("div", "bias-rows");

  for (const label of labels) {
    const share = shares[label] ?? 0;
    const ratio = label in ratios ? ratios[label]! : null;

    const row = el("div", "bias-row");
    row.dataset.label = label;
    if (opts.selected === label) row.classList.add("selected");

    row.appendChild(el("span", "bias-label", label));

    const barBox = el("div", "bias-bar-box");
    const bar = el("div", "bias-bar");
    bar.style.width = `${(share / maxShare) * 100}%`;
    barBox.appendChild(bar);
    row.appendChild(barBox);

    row.appendChild(el("span", "bias-share", formatShare(share)));

    const badge = el("span", ratio === null ? "bias-ratio na" : "bias-ratio", formatRatio(ratio));
    if (ratio !== null) {
      badge.classList.add(ratio >= 1 ? "over" : "under");
    }
    row.appendChild(badge);

    if (opts.onSelect) {
      row.addEventListener("click", () => {
        // Clicking the selected row clears the filter.
        opts.onSelect!(opts.selected === label ? null : label);
      });
    }
    list.appendChild(row);
  }

  panel.appendChild(list);
  return panel;
}

export function renderKeywordPanel(rows: KeywordRow[]): HTMLElement {
  const panel = el("section", "panel keyword-panel");
  panel.appendChild(el("h2", "panel-title", "top title keywords"));
  const list = el("ol", "keyword-rows");
  for (const row of rows) {
    const item = el("li", "keyword-row");
    item.appendChild(el("span", "keyword-lemma", row.keyword));
    item.appendChild(el("span", "keyword-count", String(row.count)));
    list.appendChild(item);
  }
  panel.appendChild(list);
  return panel;
}

export function renderErrorBanner(message: string): HTMLElement {
  const banner = el("div", "error-banner");
  banner.setAttribute("role", "alert");
  banner.textContent = `API unreachable: ${message} -- showing last loaded data`;
  return banner;
}
