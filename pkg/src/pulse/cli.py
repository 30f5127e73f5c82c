"""Command-line interface.

Ingest subcommands parse source files and persist them to the store;
analyze subcommands derive metrics from what was ingested, write them back
as aggregates (which the HTTP API then serves), and optionally export
delimited files with rendered figures alongside.

The store directory comes from, in order: the PULSE_STORE environment
variable, the --store flag, then ./pulse-store.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from datetime import date
from pathlib import Path

from . import analytics, bias, keywords, signals
from .errors import EmptyInput, PulseError
from .gkg import ingest
from .server import create_server
from .store import AggregateKey, AggregateStore

DEFAULT_STORE = "./pulse-store"


def resolve_store_path(flag_value: str | None) -> Path:
    env = os.environ.get("PULSE_STORE")
    if env:
        return Path(env)
    return Path(flag_value or DEFAULT_STORE)


def _store(args) -> AggregateStore:
    return AggregateStore.open_or_create(resolve_store_path(args.store))


def _iso_date(text: str) -> date:
    try:
        return date.fromisoformat(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected YYYY-MM-DD, got {text!r}") from exc


def _span_from_args(args, store, metric="articles"):
    """Explicit --from/--to, falling back to the store's coverage for metric."""
    coverage = store.manifest_info()["coverage"].get(metric)
    lo = getattr(args, "from_date", None)
    hi = getattr(args, "to_date", None)
    if lo is None:
        if coverage is None:
            raise EmptyInput(f"no {metric} in store and no --from given")
        lo = date.fromisoformat(coverage[0])
    if hi is None:
        if coverage is None:
            raise EmptyInput(f"no {metric} in store and no --to given")
        hi = date.fromisoformat(coverage[1])
    return lo, hi


def _write_rows(out: Path, header: list[str], rows) -> None:
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _figure_path(out: Path) -> Path:
    return out.with_suffix(".png")


# -- ingest ------------------------------------------------------------


def cmd_ingest_gkg(args) -> int:
    store = _store(args)
    articles = []
    report = ingest(args.files, articles.append, raw=args.raw_gkg)
    store.write_articles(articles, report=report.as_dict())
    if args.report:
        Path(args.report).write_text(json.dumps(report.as_dict(), indent=2) + "\n")
    for name, value in report.as_dict().items():
        print(f"{name}: {value}")
    return 0


def cmd_ingest_cases(args) -> int:
    store = _store(args)
    kind = (signals.DEATHS_CUMULATIVE if args.kind == "deaths"
            else signals.CASES_CUMULATIVE)
    metric = "deaths" if args.kind == "deaths" else "cases"
    series_list = signals.load_case_series(args.file, kind)
    if args.region:
        series_list = [s for s in series_list if s.region == args.region]
    total_clamps = 0
    batch = []
    for series in series_list:
        new, clamps = signals.new_daily(series)
        total_clamps += clamps
        batch += [(AggregateKey(f"{metric}_cumulative", series.region, "daily", d), v)
                  for d, v in series.points]
        batch += [(AggregateKey(metric, series.region, "daily", d), v)
                  for d, v in new.points]
        weekly = analytics.weekly_counts(
            analytics.CountSeries(analytics.DAILY, metric, list(new.points)))
        batch += [(AggregateKey(metric, series.region, "weekly", d), v)
                  for d, v in weekly.points]
    if not batch:
        raise EmptyInput(f"no rows for region {args.region!r} in {args.file}")
    store.write_aggregates(batch)
    print(f"{metric}: {len(series_list)} region(s), {total_clamps} negative diff(s) clamped")
    return 0


def cmd_ingest_mobility(args) -> int:
    store = _store(args)
    series_list = signals.load_mobility(args.file)
    if args.region:
        series_list = [s for s in series_list if s.region == args.region]
    batch = [(AggregateKey("mobility", f"{s.region}/{s.category}", "daily", d), v)
             for s in series_list for d, v in s.points]
    if not batch:
        raise EmptyInput(f"no rows for region {args.region!r} in {args.file}")
    store.write_aggregates(batch)
    print(f"mobility: {len(series_list)} series, {len(batch)} points")
    return 0


def cmd_ingest_distancing(args) -> int:
    store = _store(args)
    series_list = signals.load_distancing(args.file)
    if args.region:
        series_list = [s for s in series_list if s.region == args.region]
    batch = [(AggregateKey("distancing", s.region, "daily", d), v)
             for s in series_list for d, v in s.points]
    if not batch:
        raise EmptyInput(f"no rows for region {args.region!r} in {args.file}")
    store.write_aggregates(batch)
    for series in sorted(series_list, key=lambda s: s.region):
        last_date, last_value = series.points[-1]
        grade = signals.grade_distancing(last_value)
        print(f"{series.region}: {len(series.points)} day(s), "
              f"latest {last_value:+.2f} on {last_date} -> grade {grade}")
    return 0


def cmd_ingest_demographics(args) -> int:
    store = _store(args)
    table = signals.load_demographics(args.file)
    if args.region:
        table = {(s, i): v for (s, i), v in table.items() if s == args.region}
    if not table:
        raise EmptyInput(f"no rows for region {args.region!r} in {args.file}")
    store.write_demographics(table)
    states = {s for s, _ in table}
    print(f"demographics: {len(table)} indicator(s) across {len(states)} state(s)")
    return 0


def cmd_ingest_trends(args) -> int:
    store = _store(args)
    series_list = signals.load_trends(args.file)
    if args.region:
        series_list = [s for s in series_list if s.region == args.region]
    batch = [(AggregateKey("trends", f"{s.category}/{s.region}", "daily", d), v)
             for s in series_list for d, v in s.points]
    if not batch:
        raise EmptyInput(f"no rows for region {args.region!r} in {args.file}")
    store.write_aggregates(batch)
    print(f"trends: {len(series_list)} keyword/region series, {len(batch)} points")
    return 0


# -- bias / keywords ---------------------------------------------------


def cmd_bias_load(args) -> int:
    store = _store(args)
    registry = bias.load_ratings(args.mbfc, args.allsides)
    store.write_registry(registry)
    print(f"registry: {len(registry)} publisher(s)")
    return 0


def cmd_keywords(args) -> int:
    store = _store(args)
    articles = list(store.iter_articles())
    if not articles:
        raise EmptyInput("no articles in store; run `pulse ingest gkg` first")
    ranked = keywords.top_keywords(articles, args.top)
    anchor = min(a.record_date for a in articles)
    store.write_aggregates([
        (AggregateKey("keyword_count", kw.lemma, "daily", anchor), kw.mentions)
        for kw in ranked])
    for kw in ranked:
        print(f"{kw.lemma}\t{kw.mentions}")
    if args.out:
        _write_rows(Path(args.out), ["keyword", "count"],
                    [(kw.lemma, kw.mentions) for kw in ranked])
    return 0


# -- analyze -----------------------------------------------------------


def _load_articles(store):
    articles = list(store.iter_articles())
    if not articles:
        raise EmptyInput("no articles in store; run `pulse ingest gkg` first")
    return articles


def cmd_analyze_counts(args) -> int:
    store = _store(args)
    articles = _load_articles(store)
    span = _span_from_args(args, store)
    daily = analytics.daily_counts(articles, span)
    weekly = analytics.weekly_counts(daily)
    store.write_aggregates(
        [(AggregateKey("articles", "", "daily", d), v) for d, v in daily.points]
        + [(AggregateKey("articles", "", "weekly", d), v) for d, v in weekly.points])
    peak_date, peak_value = max(daily.points, key=lambda p: p[1])
    print(f"articles: {daily.total()} total, peak {peak_value} on {peak_date}")
    if args.out:
        out = Path(args.out)
        if out.suffix == ".json":
            out.write_text(json.dumps({
                "daily": [{"date": d.isoformat(), "value": v} for d, v in daily.points],
                "weekly": [{"date": d.isoformat(), "value": v} for d, v in weekly.points],
            }, indent=2) + "\n")
        else:
            _write_rows(out, ["granularity", "date", "value"],
                        [("daily", d.isoformat(), v) for d, v in daily.points]
                        + [("weekly", d.isoformat(), v) for d, v in weekly.points])
        from . import report
        cases = store.read_series("cases", args.region, "daily", span)
        report.render_counts(daily.points, weekly.points, _figure_path(out),
                             overlay=cases or None)
        print(f"wrote {out} and {_figure_path(out)}")
    return 0


def cmd_analyze_bias(args) -> int:
    store = _store(args)
    articles = _load_articles(store)
    registry = store.read_registry()
    if not registry:
        print("note: registry is empty; all articles count as Unrated", file=sys.stderr)
    span = _span_from_args(args, store)
    by_label = analytics.counts_by_bias(articles, registry, span)
    batch = []
    for label, series in by_label.items():
        batch += [(AggregateKey("bias_count", label, "daily", d), v)
                  for d, v in series.points]
        weekly = analytics.weekly_counts(series)
        batch += [(AggregateKey("bias_count", label, "weekly", d), v)
                  for d, v in weekly.points]
    store.write_aggregates(batch)

    total_daily = analytics.daily_counts(articles, span)
    correlations = analytics.bias_correlations(by_label, total_daily)
    for label in bias.ALL_LABELS:
        r = correlations[label]
        shown = "n/a" if r is None else f"{r:+.4f}"
        print(f"{label}\t{by_label[label].total()}\tr={shown}")
    if args.out:
        out = Path(args.out)
        if out.suffix == ".json":
            out.write_text(json.dumps({
                label: [{"date": d.isoformat(), "value": v}
                        for d, v in by_label[label].points]
                for label in bias.ALL_LABELS}, indent=2) + "\n")
        else:
            _write_rows(out, ["label", "date", "value"],
                        [(label, d.isoformat(), v) for label in bias.ALL_LABELS
                         for d, v in by_label[label].points])
        from . import report
        report.render_bias_counts(
            {label: by_label[label].points for label in bias.ALL_LABELS},
            _figure_path(out))
        print(f"wrote {out} and {_figure_path(out)}")
    return 0


def cmd_analyze_pearson(args) -> int:
    store = _store(args)
    x = dict(store.read_series(args.x, args.x_category, "daily"))
    y = dict(store.read_series(args.y, args.y_category, "daily"))
    common = sorted(set(x) & set(y))
    if getattr(args, "from_date", None):
        common = [d for d in common if d >= args.from_date]
    if getattr(args, "to_date", None):
        common = [d for d in common if d <= args.to_date]
    r = analytics.pearson([x[d] for d in common], [y[d] for d in common])
    print(f"pearson({args.x}, {args.y}) = {r:+.6f} over {len(common)} day(s)")
    if args.out:
        Path(args.out).write_text(json.dumps({
            "x": args.x, "y": args.y, "r": r, "n": len(common),
            "from": common[0].isoformat(), "to": common[-1].isoformat()},
            indent=2) + "\n")
        print(f"wrote {args.out}")
    return 0


def cmd_analyze_shares(args) -> int:
    store = _store(args)
    articles = _load_articles(store)
    registry = store.read_registry()
    span = _span_from_args(args, store)
    in_span = [a for a in articles if span[0] <= a.record_date <= span[1]]
    table = analytics.category_share(in_span, registry)
    store.write_aggregates([
        (AggregateKey("bias_share", label, "daily", span[0]), share)
        for label, share in table.shares.items()])
    for label in bias.ALL_LABELS:
        print(f"{label}\t{table.shares[label]:.4f}")
    if args.out:
        out = Path(args.out)
        if out.suffix == ".json":
            out.write_text(json.dumps(table.shares, indent=2) + "\n")
        else:
            _write_rows(out, ["label", "share"],
                        [(label, table.shares[label]) for label in bias.ALL_LABELS])
        from . import report
        report.render_shares(table.shares, _figure_path(out))
        print(f"wrote {out} and {_figure_path(out)}")
    return 0


def cmd_analyze_ratios(args) -> int:
    store = _store(args)
    baseline_raw = json.loads(Path(args.baseline).read_text())
    unknown = set(baseline_raw) - set(bias.ALL_LABELS)
    if unknown:
        raise EmptyInput(f"baseline has unknown label(s): {sorted(unknown)}")
    baseline = analytics.ShareTable(
        {label: float(baseline_raw.get(label, 0.0)) for label in bias.ALL_LABELS})

    covid_table = store.read_table("bias_share")
    if not covid_table:
        articles = _load_articles(store)
        registry = store.read_registry()
        covid_table = analytics.category_share(articles, registry).shares
    covid = analytics.ShareTable(
        {label: covid_table.get(label, 0.0) for label in bias.ALL_LABELS})

    ratios = analytics.representation_ratio(covid, baseline)
    span = _span_from_args(args, store)
    store.write_aggregates([
        (AggregateKey("bias_ratio", label, "daily", span[0]), r)
        for label, r in ratios.ratios.items() if r is not None])
    for label in bias.ALL_LABELS:
        r = ratios.ratios[label]
        print(f"{label}\t{'n/a' if r is None else format(r, '.4f')}")
    if args.out:
        out = Path(args.out)
        if out.suffix == ".json":
            out.write_text(json.dumps(ratios.ratios, indent=2) + "\n")
        else:
            _write_rows(out, ["label", "ratio"],
                        [(label, "" if ratios.ratios[label] is None
                          else ratios.ratios[label]) for label in bias.ALL_LABELS])
        from . import report
        report.render_ratios(ratios.ratios, _figure_path(out))
        print(f"wrote {out} and {_figure_path(out)}")
    return 0


# -- serve / export ----------------------------------------------------


def cmd_serve(args) -> int:
    static = Path(args.static) if args.static else None
    server = create_server(resolve_store_path(args.store), args.bind,
                           static_root=static, verbose=args.verbose)
    host, port = server.server_address[:2]
    print(f"serving store {resolve_store_path(args.store)} on http://{host}:{port}/v1")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
    return 0


TABLE_METRICS = ("bias_share", "bias_ratio", "keyword_count")


def cmd_export(args) -> int:
    store = AggregateStore.open(resolve_store_path(args.store))
    out = Path(args.out)
    if args.metric in TABLE_METRICS:
        table = store.read_table(args.metric)
        _write_rows(out, ["category", "value"], sorted(table.items()))
        print(f"wrote {out} ({len(table)} row(s))")
        return 0
    span = None
    if args.from_date or args.to_date:
        span = (args.from_date or date.min, args.to_date or date.max)
    points = store.read_series(args.metric, args.category, args.granularity, span)
    _write_rows(out, ["date", "value"],
                [(d.isoformat(), v) for d, v in points])
    print(f"wrote {out} ({len(points)} row(s))")
    return 0


# -- parser ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pulse",
        description="Streaming COVID-19 news-signal ingestion and analytics.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--store", metavar="DIR",
                        help=f"store directory (default {DEFAULT_STORE}; "
                             "the PULSE_STORE environment variable wins over this flag)")
    window = argparse.ArgumentParser(add_help=False)
    window.add_argument("--from", dest="from_date", type=_iso_date, metavar="DATE")
    window.add_argument("--to", dest="to_date", type=_iso_date, metavar="DATE")

    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="parse source files into the store")
    ingest_sub = p_ingest.add_subparsers(dest="source", required=True)

    p_gkg = ingest_sub.add_parser("gkg", parents=[common], help="news records (TSV)")
    p_gkg.add_argument("files", nargs="+", type=Path)
    p_gkg.add_argument("--raw-gkg", action="store_true",
                       help="files are full 27-column GKG exports")
    p_gkg.add_argument("--report", metavar="PATH", help="write ingest counters as JSON")
    p_gkg.set_defaults(func=cmd_ingest_gkg)

    p_cases = ingest_sub.add_parser("cases", parents=[common],
                                    help="cumulative case/death counts (wide CSV)")
    p_cases.add_argument("file", type=Path)
    p_cases.add_argument("--region", metavar="CODE")
    p_cases.add_argument("--kind", choices=["cases", "deaths"], default="cases")
    p_cases.set_defaults(func=cmd_ingest_cases)

    p_mob = ingest_sub.add_parser("mobility", parents=[common],
                                  help="mobility change columns (long CSV)")
    p_mob.add_argument("file", type=Path)
    p_mob.add_argument("--region", metavar="CODE")
    p_mob.set_defaults(func=cmd_ingest_mobility)

    p_dist = ingest_sub.add_parser("distancing", parents=[common],
                                   help="distance-reduction rows (long CSV)")
    p_dist.add_argument("file", type=Path)
    p_dist.add_argument("--region", metavar="CODE")
    p_dist.set_defaults(func=cmd_ingest_distancing)

    p_demo = ingest_sub.add_parser("demographics", parents=[common],
                                   help="state indicator rows (long CSV)")
    p_demo.add_argument("file", type=Path)
    p_demo.add_argument("--region", metavar="CODE")
    p_demo.set_defaults(func=cmd_ingest_demographics)

    p_tr = ingest_sub.add_parser("trends", parents=[common],
                                 help="search interest rows (long CSV)")
    p_tr.add_argument("file", type=Path)
    p_tr.add_argument("--region", metavar="CODE")
    p_tr.set_defaults(func=cmd_ingest_trends)

    p_bias = sub.add_parser("bias", help="publisher bias ratings")
    bias_sub = p_bias.add_subparsers(dest="action", required=True)
    p_load = bias_sub.add_parser("load", parents=[common], help="load rating CSVs")
    p_load.add_argument("--mbfc", required=True, type=Path)
    p_load.add_argument("--allsides", required=True, type=Path)
    p_load.set_defaults(func=cmd_bias_load)

    p_kw = sub.add_parser("keywords", parents=[common],
                          help="rank title keywords from stored articles")
    p_kw.add_argument("--top", type=int, required=True, metavar="K")
    p_kw.add_argument("--out", metavar="CSV")
    p_kw.set_defaults(func=cmd_keywords)

    p_an = sub.add_parser("analyze", help="derive metrics from the store")
    an_sub = p_an.add_subparsers(dest="metric", required=True)

    p_counts = an_sub.add_parser("counts", parents=[common, window])
    p_counts.add_argument("--out", metavar="PATH", help="csv or json export")
    p_counts.add_argument("--region", default="US",
                          help="case region for the figure overlay")
    p_counts.set_defaults(func=cmd_analyze_counts)

    p_abias = an_sub.add_parser("bias", parents=[common, window])
    p_abias.add_argument("--out", metavar="PATH")
    p_abias.set_defaults(func=cmd_analyze_bias)

    p_pear = an_sub.add_parser("pearson", parents=[common, window])
    p_pear.add_argument("--x", default="articles", help="first stored metric")
    p_pear.add_argument("--x-category", default="", metavar="CAT")
    p_pear.add_argument("--y", default="cases", help="second stored metric")
    p_pear.add_argument("--y-category", default="US", metavar="CAT")
    p_pear.add_argument("--out", metavar="JSON")
    p_pear.set_defaults(func=cmd_analyze_pearson)

    p_sh = an_sub.add_parser("shares", parents=[common, window])
    p_sh.add_argument("--out", metavar="PATH")
    p_sh.set_defaults(func=cmd_analyze_shares)

    p_rat = an_sub.add_parser("ratios", parents=[common, window])
    p_rat.add_argument("--baseline", required=True, metavar="JSON",
                       help="baseline share table {label: share}")
    p_rat.add_argument("--out", metavar="PATH")
    p_rat.set_defaults(func=cmd_analyze_ratios)

    p_serve = sub.add_parser("serve", parents=[common], help="run the read-only API")
    p_serve.add_argument("--bind", default="127.0.0.1:8400", metavar="ADDR:PORT")
    p_serve.add_argument("--static", metavar="DIR", help="also serve these files at /")
    p_serve.add_argument("--verbose", action="store_true")
    p_serve.set_defaults(func=cmd_serve)

    p_exp = sub.add_parser("export", parents=[common, window],
                           help="write one stored metric as CSV")
    p_exp.add_argument("--metric", required=True)
    p_exp.add_argument("--category", default="",
                       help="e.g. US, US/parks, fever/NY")
    p_exp.add_argument("--granularity", choices=["daily", "weekly"], default="daily")
    p_exp.add_argument("--out", required=True, metavar="CSV")
    p_exp.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PulseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
