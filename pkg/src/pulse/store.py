"""Persistent store for articles and derived aggregates.

Layout: a directory holding append-only JSONL segment files plus a
`manifest.json` that names which segments are live. The manifest is the
single commit point — it is rewritten to a temp file and swapped in with
os.replace, so a crash mid-write leaves the previous version fully intact
and the half-written segment invisible. Orphaned segments are swept on the
next successful commit.

Within one batch keys must be unique; across batches the latest committed
write for a key wins (upsert semantics).
"""

from __future__ import annotations

import errno
import json
import os
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import Iterable, Iterator, Optional

from .errors import CorruptStore, DuplicateKeyInBatch, StorageFull
from .gkg import Article

MANIFEST_NAME = "manifest.json"
FORMAT_TAG = "pulse-store-v1"

DAILY = "daily"
WEEKLY = "weekly"


@dataclass(slots=True, frozen=True)
class AggregateKey:
    """Identifies one stored value: metric + category/region + granularity + period start."""

    metric: str
    category: str
    granularity: str
    day: date


def _iso(d: date) -> str:
    return d.isoformat()


def _write_json_lines(path: Path, rows: Iterable[dict]) -> None:
    """Write rows to path and force them to disk before returning."""
    try:
        with open(path, "w", encoding="utf-8") as fh:
            for row in rows:
                fh.write(json.dumps(row, separators=(",", ":")) + "\n")
            fh.flush()
            os.fsync(fh.fileno())
    except OSError as exc:
        if exc.errno == errno.ENOSPC:
            raise StorageFull(str(path)) from exc
        raise


def _replace_manifest(tmp: Path, final: Path) -> None:
    """The commit point; separated out so tests can inject a crash here."""
    os.replace(tmp, final)


class AggregateStore:
    """Single-writer, many-reader store rooted at a directory."""

    def __init__(self, root: Path | str, manifest: dict):
        self.root = Path(root)
        self._manifest = manifest
        self._segment_cache: dict[str, list[dict]] = {}

    # -- lifecycle -----------------------------------------------------

    @classmethod
    def create(cls, root: Path | str) -> "AggregateStore":
        """Initialize an empty store; the directory may already exist."""
        root = Path(root)
        root.mkdir(parents=True, exist_ok=True)
        manifest = {
            "format": FORMAT_TAG,
            "version": 0,
            "segments": [],
            "article_files": [],
            "reports": [],
            "coverage": {},
            "registry_file": None,
            "demographics_file": None,
        }
        store = cls(root, manifest)
        store._commit(manifest)
        return store

    @classmethod
    def open(cls, root: Path | str) -> "AggregateStore":
        root = Path(root)
        path = root / MANIFEST_NAME
        if not path.exists():
            raise CorruptStore(f"no manifest at {path}")
        try:
            manifest = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise CorruptStore(f"unreadable manifest at {path}: {exc}") from exc
        if not isinstance(manifest, dict) or manifest.get("format") != FORMAT_TAG:
            raise CorruptStore(f"unrecognized manifest format at {path}")
        for field in ("version", "segments", "article_files", "coverage"):
            if field not in manifest:
                raise CorruptStore(f"manifest missing field {field!r}")
        for name in list(manifest["segments"]) + list(manifest["article_files"]):
            if not (root / name).exists():
                raise CorruptStore(f"manifest references missing file {name}")
        return cls(root, manifest)

    @classmethod
    def open_or_create(cls, root: Path | str) -> "AggregateStore":
        root = Path(root)
        if (root / MANIFEST_NAME).exists():
            return cls.open(root)
        return cls.create(root)

    @property
    def version(self) -> int:
        return self._manifest["version"]

    def reload(self) -> None:
        """Pick up a newer committed version (readers racing the writer)."""
        self._manifest = AggregateStore.open(self.root)._manifest

    # -- commit machinery ----------------------------------------------

    def _commit(self, manifest: dict) -> None:
        """Atomically replace the manifest, then sweep unreferenced segments."""
        tmp = self.root / (MANIFEST_NAME + ".tmp")
        try:
            with open(tmp, "w", encoding="utf-8") as fh:
                json.dump(manifest, fh, indent=1)
                fh.write("\n")
                fh.flush()
                os.fsync(fh.fileno())
        except OSError as exc:
            if exc.errno == errno.ENOSPC:
                raise StorageFull(str(tmp)) from exc
            raise
        _replace_manifest(tmp, self.root / MANIFEST_NAME)
        self._manifest = manifest
        self._sweep_orphans()

    def _sweep_orphans(self) -> None:
        live = (set(self._manifest["segments"])
                | set(self._manifest["article_files"])
                | {self._manifest.get("registry_file"),
                   self._manifest.get("demographics_file"),
                   MANIFEST_NAME})
        for path in self.root.iterdir():
            if path.is_file() and path.name not in live and (
                    path.suffix in (".jsonl", ".tmp") or path.name.startswith("registry-")
                    or path.name.startswith("demographics-")):
                try:
                    path.unlink()
                except OSError:
                    pass  # a sweep failure never blocks the committed write

    def _next_manifest(self) -> dict:
        manifest = json.loads(json.dumps(self._manifest))  # deep copy
        manifest["version"] = self._manifest["version"] + 1
        return manifest

    def _merge_coverage(self, manifest: dict, metric: str, days: Iterable[date]) -> None:
        days = list(days)
        if not days:
            return
        lo, hi = _iso(min(days)), _iso(max(days))
        prior = manifest["coverage"].get(metric)
        if prior:
            lo, hi = min(lo, prior[0]), max(hi, prior[1])
        manifest["coverage"][metric] = [lo, hi]

    # -- aggregates ----------------------------------------------------

    def write_aggregates(self, batch: list[tuple[AggregateKey, float]]) -> int:
        """Commit a batch atomically; returns the new version."""
        keys = [k for k, _ in batch]
        if len(set(keys)) != len(keys):
            raise DuplicateKeyInBatch(f"{len(keys) - len(set(keys))} repeated keys")
        manifest = self._next_manifest()
        name = f"seg-{manifest['version']:06d}.jsonl"
        _write_json_lines(self.root / name, (
            {"metric": k.metric, "category": k.category,
             "granularity": k.granularity, "date": _iso(k.day), "value": v}
            for k, v in batch))
        manifest["segments"].append(name)
        by_metric: dict[str, list[date]] = {}
        for k in keys:
            by_metric.setdefault(k.metric, []).append(k.day)
        for metric, days in by_metric.items():
            self._merge_coverage(manifest, metric, days)
        self._commit(manifest)
        return manifest["version"]

    def _segment_rows(self, name: str) -> list[dict]:
        if name not in self._segment_cache:
            with open(self.root / name, encoding="utf-8") as fh:
                self._segment_cache[name] = [json.loads(line) for line in fh]
        return self._segment_cache[name]

    def read_series(
        self,
        metric: str,
        category: str = "",
        granularity: str = DAILY,
        span: Optional[tuple[date, date]] = None,
    ) -> list[tuple[date, float]]:
        """Date-sorted points for one key prefix; [] for unknown prefixes."""
        merged: dict[str, float] = {}
        for name in self._manifest["segments"]:
            for row in self._segment_rows(name):
                if (row["metric"] == metric and row["category"] == category
                        and row["granularity"] == granularity):
                    merged[row["date"]] = row["value"]
        points = [(date.fromisoformat(d), v) for d, v in merged.items()]
        if span is not None:
            lo, hi = span
            points = [(d, v) for d, v in points if lo <= d <= hi]
        return sorted(points)

    def read_table(self, metric: str) -> dict[str, float]:
        """Latest-dated value per category for a scalar-table metric."""
        latest: dict[str, tuple[str, float]] = {}
        for name in self._manifest["segments"]:
            for row in self._segment_rows(name):
                if row["metric"] != metric:
                    continue
                prior = latest.get(row["category"])
                if prior is None or row["date"] >= prior[0]:
                    latest[row["category"]] = (row["date"], row["value"])
        return {cat: val for cat, (_, val) in latest.items()}

    def categories(self, metric: str) -> list[str]:
        """All categories ever written for a metric, sorted."""
        out = set()
        for name in self._manifest["segments"]:
            for row in self._segment_rows(name):
                if row["metric"] == metric:
                    out.add(row["category"])
        return sorted(out)

    # -- articles --------------------------------------------------------

    def write_articles(self, articles: Iterable[Article], report: Optional[dict] = None) -> int:
        manifest = self._next_manifest()
        name = f"articles-{manifest['version']:06d}.jsonl"
        rows = []
        days = []
        for a in articles:
            days.append(a.record_date)
            rows.append({
                "date": _iso(a.record_date), "publisher": a.publisher,
                "identifier": a.document_identifier, "title": a.title,
                "themes": list(a.themes), "tone": a.tone,
                "criteria": sorted(a.matched_criteria),
            })
        _write_json_lines(self.root / name, rows)
        manifest["article_files"].append(name)
        if report is not None:
            manifest["reports"].append(report)
        self._merge_coverage(manifest, "articles", days)
        self._commit(manifest)
        return manifest["version"]

    def iter_articles(self) -> Iterator[Article]:
        for name in self._manifest["article_files"]:
            with open(self.root / name, encoding="utf-8") as fh:
                for line in fh:
                    row = json.loads(line)
                    yield Article(
                        date.fromisoformat(row["date"]), row["publisher"],
                        row["identifier"], row["title"], tuple(row["themes"]),
                        row["tone"], covid_related=True,
                        matched_criteria=frozenset(row["criteria"]),
                    )

    # -- side tables -----------------------------------------------------

    def write_registry(self, registry: dict) -> int:
        manifest = self._next_manifest()
        name = f"registry-{manifest['version']:06d}.json"
        rows = [{"publisher": r.publisher, "mbfc": r.mbfc, "allsides": r.allsides}
                for r in registry.values()]
        _write_json_lines(self.root / name, rows)
        manifest["registry_file"] = name
        self._commit(manifest)
        return manifest["version"]

    def read_registry(self) -> dict:
        from .bias import SourceRating
        name = self._manifest.get("registry_file")
        if name is None:
            return {}
        out = {}
        with open(self.root / name, encoding="utf-8") as fh:
            for line in fh:
                row = json.loads(line)
                out[row["publisher"]] = SourceRating(
                    row["publisher"], mbfc=row["mbfc"], allsides=row["allsides"])
        return out

    def write_demographics(self, table: dict[tuple[str, str], float]) -> int:
        manifest = self._next_manifest()
        name = f"demographics-{manifest['version']:06d}.json"
        rows = [{"state": s, "indicator": i, "value": v}
                for (s, i), v in sorted(table.items())]
        _write_json_lines(self.root / name, rows)
        manifest["demographics_file"] = name
        self._commit(manifest)
        return manifest["version"]

    def read_demographics(self) -> dict[tuple[str, str], float]:
        name = self._manifest.get("demographics_file")
        if name is None:
            return {}
        out = {}
        with open(self.root / name, encoding="utf-8") as fh:
            for line in fh:
                row = json.loads(line)
                out[(row["state"], row["indicator"])] = row["value"]
        return out

    # -- manifest view ---------------------------------------------------

    def manifest_info(self) -> dict:
        """Public manifest summary served at /v1/manifest."""
        return {
            "version": self._manifest["version"],
            "coverage": dict(self._manifest["coverage"]),
            "reports": list(self._manifest["reports"]),
        }
