"""Render analysis figures to image files.

Figure renderers take plain (date, value) point lists — the same shape the
store returns — and write PNGs next to the delimited exports. The Agg
backend is forced so rendering works headless.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402 — backend must be set first

Points = Sequence[tuple]

FIG_SIZE = (10, 5)
DPI = 150
GRID_ALPHA = 0.3
COUNT_COLOR = "tab:blue"
WEEKLY_COLOR = "navy"
OVERLAY_COLOR = "tab:red"
BAR_COLOR = "tab:blue"
NA_COLOR = "lightgray"
BASELINE_LINE = "gray"


def _save(fig, out: Path | str) -> Path:
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=DPI, bbox_inches="tight")
    plt.close(fig)
    return out


def render_counts(
    daily: Points,
    weekly: Points,
    out: Path | str,
    overlay: Optional[Points] = None,
    overlay_label: str = "new cases",
) -> Path:
    """Daily and weekly article counts; optional second series on a twin axis."""
    fig, ax = plt.subplots(figsize=FIG_SIZE)
    if daily:
        ax.plot([d for d, _ in daily], [v for _, v in daily],
                color=COUNT_COLOR, lw=0.8, alpha=0.7, label="articles (daily)")
    if weekly:
        ax.plot([d for d, _ in weekly], [v for _, v in weekly],
                color=WEEKLY_COLOR, lw=1.8, marker="o", ms=3, label="articles (weekly)")
    ax.set_ylabel("articles")
    ax.grid(alpha=GRID_ALPHA)
    handles, labels = ax.get_legend_handles_labels()

    if overlay:
        twin = ax.twinx()
        twin.plot([d for d, _ in overlay], [v for _, v in overlay],
                  color=OVERLAY_COLOR, lw=1.2, label=overlay_label)
        twin.set_ylabel(overlay_label, color=OVERLAY_COLOR)
        twin.tick_params(axis="y", colors=OVERLAY_COLOR)
        h2, l2 = twin.get_legend_handles_labels()
        handles += h2
        labels += l2

    ax.legend(handles, labels, loc="upper left", fontsize=8)
    fig.autofmt_xdate()
    return _save(fig, out)


def render_bias_counts(series_by_label: Mapping[str, Points], out: Path | str) -> Path:
    """One line per bias category; empty categories are skipped."""
    fig, ax = plt.subplots(figsize=FIG_SIZE)
    for label, points in series_by_label.items():
        if points:
            ax.plot([d for d, _ in points], [v for _, v in points], lw=1.0, label=label)
    ax.set_ylabel("articles")
    ax.grid(alpha=GRID_ALPHA)
    if ax.lines:
        ax.legend(fontsize=7, ncol=2)
    fig.autofmt_xdate()
    return _save(fig, out)


def render_shares(shares: Mapping[str, float], out: Path | str) -> Path:
    """Horizontal bars of each category's share of all articles."""
    fig, ax = plt.subplots(figsize=FIG_SIZE)
    labels = list(shares)
    values = [shares[k] * 100 for k in labels]
    ax.barh(labels, values, color=BAR_COLOR)
    for i, v in enumerate(values):
        ax.text(v, i, f" {v:.1f}%", va="center", fontsize=8)
    ax.set_xlabel("share of all articles (%)")
    ax.invert_yaxis()
    ax.grid(axis="x", alpha=GRID_ALPHA)
    return _save(fig, out)


def render_ratios(ratios: Mapping[str, Optional[float]], out: Path | str) -> Path:
    """Representation ratios vs. baseline; undefined entries get an n/a note."""
    fig, ax = plt.subplots(figsize=FIG_SIZE)
    labels = list(ratios)
    for i, label in enumerate(labels):
        r = ratios[label]
        if r is None:
            ax.barh(i, 0, color=NA_COLOR)
            ax.text(0.02, i, "n/a", va="center", fontsize=8, color="gray")
        else:
            ax.barh(i, r, color=BAR_COLOR)
            ax.text(r, i, f" {r:.2f}x", va="center", fontsize=8)
    ax.axvline(1.0, color=BASELINE_LINE, lw=1, ls="--")
    ax.set_yticks(range(len(labels)), labels)
    ax.set_xlabel("share ratio vs. baseline (1.0 = unchanged)")
    ax.invert_yaxis()
    ax.grid(axis="x", alpha=GRID_ALPHA)
    return _save(fig, out)
