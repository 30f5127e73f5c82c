"""Read-only HTTP JSON API over a committed store.

Endpoints live under /v1 and never mutate the store; a running server
answers from the manifest version it loaded at startup, so a fixed store
version always yields identical responses. Series rows serialize as
{"date": "YYYY-MM-DD", "value": number}; undefined ratios are null;
errors are {"error": code, "message": text} with a matching HTTP status.
"""

from __future__ import annotations

import errno
import json
import posixpath
from datetime import date
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional
from urllib.parse import parse_qs, unquote, urlsplit

from . import bias
from .errors import BindFailure
from .keywords import rank
from .store import DAILY, WEEKLY, AggregateStore

DEFAULT_REGION = "US"
DEFAULT_TOP_K = 25

# metric names as written by the analyze/ingest pipeline
METRIC_ARTICLES = "articles"
METRIC_CASES = "cases"
METRIC_DEATHS = "deaths"
METRIC_MOBILITY = "mobility"
METRIC_DISTANCING = "distancing"
METRIC_TRENDS = "trends"
METRIC_BIAS_COUNT = "bias_count"
METRIC_BIAS_SHARE = "bias_share"
METRIC_BIAS_RATIO = "bias_ratio"
METRIC_KEYWORD = "keyword_count"


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _parse_query(query: str) -> dict[str, str]:
    return {k: vs[-1] for k, vs in parse_qs(query, keep_blank_values=True).items()}


def _parse_span(params: dict[str, str]) -> Optional[tuple[date, date]]:
    raw_from, raw_to = params.get("from"), params.get("to")
    if raw_from is None and raw_to is None:
        return None
    try:
        lo = date.fromisoformat(raw_from) if raw_from else date.min
        hi = date.fromisoformat(raw_to) if raw_to else date.max
    except ValueError as exc:
        raise ApiError(400, "bad_date", f"dates must be YYYY-MM-DD: {exc}")
    if lo > hi:
        raise ApiError(400, "bad_range", f"from {lo} is after to {hi}")
    return lo, hi


def _parse_granularity(params: dict[str, str]) -> str:
    g = params.get("granularity", DAILY)
    if g not in (DAILY, WEEKLY):
        raise ApiError(400, "bad_granularity", f"granularity must be daily or weekly, got {g!r}")
    return g


def _series_rows(points) -> list[dict]:
    return [{"date": d.isoformat(), "value": v} for d, v in points]


class PulseApi:
    """Maps request paths to JSON payloads; transport-agnostic for testing."""

    def __init__(self, store: AggregateStore):
        self.store = store

    def handle(self, path: str, query: str):
        params = _parse_query(query)
        parts = [unquote(p) for p in path.strip("/").split("/") if p]
        if not parts or parts[0] != "v1":
            raise ApiError(404, "not_found", f"no such route: {path}")
        rest = parts[1:]
        if rest and rest[0] == "series":
            return self._series(rest[1:], params)
        if rest and rest[0] == "bias":
            return self._bias(rest[1:], params)
        if rest == ["keywords", "top"]:
            return self._keywords_top(params)
        if rest == ["manifest"]:
            return self.store.manifest_info()
        raise ApiError(404, "not_found", f"no such route: {path}")

    def _series(self, rest: list[str], params: dict[str, str]):
        gran = _parse_granularity(params)
        span = _parse_span(params)
        if rest == [METRIC_ARTICLES]:
            return _series_rows(self.store.read_series(METRIC_ARTICLES, "", gran, span))
        if rest in ([METRIC_CASES], [METRIC_DEATHS]):
            region = params.get("region", DEFAULT_REGION)
            return _series_rows(self.store.read_series(rest[0], region, gran, span))
        if len(rest) == 3 and rest[0] == "mobility":
            key = f"{rest[1]}/{rest[2]}"
            return _series_rows(self.store.read_series(METRIC_MOBILITY, key, gran, span))
        if len(rest) == 2 and rest[0] == "distancing":
            return _series_rows(self.store.read_series(METRIC_DISTANCING, rest[1], gran, span))
        if len(rest) == 3 and rest[0] == "trends":
            key = f"{rest[1]}/{rest[2]}"
            return _series_rows(self.store.read_series(METRIC_TRENDS, key, gran, span))
        raise ApiError(404, "not_found", "no such series: " + "/".join(rest))

    def _bias(self, rest: list[str], params: dict[str, str]):
        if rest == ["counts"]:
            gran = _parse_granularity(params)
            span = _parse_span(params)
            return {label: _series_rows(
                self.store.read_series(METRIC_BIAS_COUNT, label, gran, span))
                for label in bias.ALL_LABELS}
        if rest == ["shares"]:
            table = self.store.read_table(METRIC_BIAS_SHARE)
            return {label: table.get(label, 0.0) for label in bias.ALL_LABELS}
        if rest == ["ratios"]:
            table = self.store.read_table(METRIC_BIAS_RATIO)
            return {label: table.get(label) for label in bias.ALL_LABELS}
        raise ApiError(404, "not_found", "no such bias view: " + "/".join(rest))

    def _keywords_top(self, params: dict[str, str]):
        raw_k = params.get("k", str(DEFAULT_TOP_K))
        try:
            k = int(raw_k)
        except ValueError:
            raise ApiError(400, "bad_k", f"k must be an integer, got {raw_k!r}")
        if k < 1:
            raise ApiError(400, "bad_k", f"k must be >= 1, got {k}")
        counts = {lemma: int(v) for lemma, v in self.store.read_table(METRIC_KEYWORD).items()}
        return [{"keyword": kw.lemma, "count": kw.mentions} for kw in rank(counts, k)]


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server_version = "pulse"

    def _send_json(self, status: int, payload) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        if self.command != "HEAD":
            self.wfile.write(body)

    def _dispatch(self) -> None:
        split = urlsplit(self.path)
        try:
            payload = self.server.api.handle(split.path, split.query)
        except ApiError as exc:
            self._send_json(exc.status, {"error": exc.code, "message": exc.message})
            return
        except Exception as exc:  # noqa: BLE001 — one request must not kill the server
            self._send_json(500, {"error": "internal", "message": str(exc)})
            return
        self._send_json(200, payload)

    def do_GET(self) -> None:  # noqa: N802 (http.server API)
        split = urlsplit(self.path)
        if self.server.static_root is not None and not split.path.startswith("/v1"):
            self._serve_static(split.path)
            return
        self._dispatch()

    def do_HEAD(self) -> None:  # noqa: N802
        self.do_GET()

    def do_OPTIONS(self) -> None:  # noqa: N802
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, HEAD, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def _reject_write(self) -> None:
        self._send_json(405, {"error": "method_not_allowed",
                              "message": "this API is read-only"})

    do_POST = do_PUT = do_DELETE = do_PATCH = _reject_write

    def _serve_static(self, path: str) -> None:
        root = self.server.static_root
        rel = posixpath.normpath(unquote(path)).lstrip("/")
        if rel in ("", "."):
            rel = "index.html"
        target = (root / rel).resolve()
        if ".." in rel.split("/") or not str(target).startswith(str(root.resolve())):
            self._send_json(404, {"error": "not_found", "message": "no such file"})
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._send_json(404, {"error": "not_found", "message": "no such file"})
            return
        body = target.read_bytes()
        ctype = {
            ".html": "text/html; charset=utf-8",
            ".js": "text/javascript; charset=utf-8",
            ".mjs": "text/javascript; charset=utf-8",
            ".css": "text/css; charset=utf-8",
            ".json": "application/json; charset=utf-8",
            ".svg": "image/svg+xml",
            ".png": "image/png",
            ".ico": "image/x-icon",
        }.get(target.suffix, "application/octet-stream")
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        if self.command != "HEAD":
            self.wfile.write(body)

    def log_message(self, fmt: str, *args) -> None:
        if self.server.verbose:
            super().log_message(fmt, *args)


class PulseServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, bind: tuple[str, int], api: PulseApi,
                 static_root: Optional[Path] = None, verbose: bool = False):
        self.api = api
        self.static_root = static_root
        self.verbose = verbose
        try:
            super().__init__(bind, _Handler)
        except OSError as exc:
            if exc.errno in (errno.EADDRINUSE, errno.EACCES, errno.EADDRNOTAVAIL):
                raise BindFailure(f"cannot bind {bind[0]}:{bind[1]}: {exc}") from exc
            raise


def create_server(store_path: Path | str, bind: str,
                  static_root: Optional[Path] = None,
                  verbose: bool = False) -> PulseServer:
    """Open the store (validating its manifest) and bind the service."""
    store = AggregateStore.open(store_path)  # raises CorruptStore on damage
    host, _, port = bind.rpartition(":")
    if not host or not port.isdigit():
        raise BindFailure(f"bind address must be host:port, got {bind!r}")
    return PulseServer((host, int(port)), PulseApi(store),
                       static_root=static_root, verbose=verbose)
