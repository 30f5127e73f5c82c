"""Streaming-ingest benchmark harness.

Measures peak RSS and throughput for the single-pass ingest. Each
measurement runs in a fresh subprocess so ru_maxrss reflects only that
file's ingest. Dedup is disabled for the memory check because the
fingerprint index is the one structure allowed to grow with input size.

Usage:
    python -m pulse.bench generate OUT --lines N [--seed S]
    python -m pulse.bench measure FILE
    python -m pulse.bench run [--small N] [--large N] [--keep]
"""

from __future__ import annotations

import argparse
import json
import random
import resource
import subprocess
import sys
import tempfile
import time
from pathlib import Path

from .gkg import ingest

WORDS = (
    "health outbreak market street economy travel school sports weather"
    " music election science update report local region nation city state"
).split()
THEMES = ("HEALTH_PANDEMIC", "WB_2167_PANDEMICS", "TAX_DISEASE_CORONAVIRUS",
          "EPU_ECONOMY", "GENERAL_GOVERNMENT", "EDUCATION")
KEYWORD_TITLES = ("coronavirus spreads", "covid cases rise", "officials respond")


def generate(out: Path, lines: int, seed: int = 7) -> None:
    """Write a synthetic 6-column TSV corpus; roughly half the lines match."""
    rng = random.Random(seed)
    with open(out, "w", encoding="utf-8") as fh:
        for i in range(lines):
            day = 20200101 + (i % 28)
            publisher = f"outlet{rng.randrange(5000)}.example"
            if rng.random() < 0.5:
                title = f"{rng.choice(KEYWORD_TITLES)} {i}"
                themes = rng.choice(THEMES)
            else:
                title = f"{rng.choice(WORDS)} {rng.choice(WORDS)} {i}"
                themes = ";".join(rng.sample(THEMES[3:], 2))
            fh.write(f"{day}\t{publisher}\thttps://{publisher}/{i}\t{title}"
                     f"\t{themes}\t{rng.uniform(-8, 8):.2f}\n")


def measure(path: Path) -> dict:
    """Ingest one file (dedup off) and report timing plus peak RSS."""
    emitted = 0

    def sink(_article) -> None:
        nonlocal emitted
        emitted += 1

    start = time.perf_counter()
    report = ingest([path], sink, dedup=False)
    elapsed = time.perf_counter() - start
    peak_kb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    return {
        "file": str(path),
        "lines": report.lines_read,
        "emitted": emitted,
        "elapsed_s": round(elapsed, 3),
        "lines_per_s": round(report.lines_read / elapsed) if elapsed > 0 else None,
        "peak_rss_kb": peak_kb,
    }


def _measure_in_subprocess(path: Path) -> dict:
    proc = subprocess.run(
        [sys.executable, "-m", "pulse.bench", "measure", str(path)],
        capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def run(small: int, large: int, keep: bool = False) -> dict:
    """Generate two corpora (large/small = the size ratio under test), measure
    each in its own process, and report whether peak memory stayed flat."""
    workdir = Path(tempfile.mkdtemp(prefix="pulse-bench-"))
    results = []
    try:
        for lines in (small, large):
            corpus = workdir / f"corpus-{lines}.tsv"
            generate(corpus, lines)
            results.append(_measure_in_subprocess(corpus))
    finally:
        if not keep:
            for f in workdir.glob("corpus-*.tsv"):
                f.unlink()
            workdir.rmdir()
    rss_small, rss_large = (r["peak_rss_kb"] for r in results)
    spread = abs(rss_large - rss_small) / rss_small
    return {
        "runs": results,
        "size_ratio": large / small,
        "rss_spread": round(spread, 4),
        "rss_flat_within_10pct": spread <= 0.10,
        "throughput_lines_per_s": results[-1]["lines_per_s"],
    }


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="pulse.bench", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="write a synthetic corpus")
    p_gen.add_argument("out", type=Path)
    p_gen.add_argument("--lines", type=int, required=True)
    p_gen.add_argument("--seed", type=int, default=7)

    p_meas = sub.add_parser("measure", help="ingest one file and print stats")
    p_meas.add_argument("file", type=Path)

    p_run = sub.add_parser("run", help="full flat-memory comparison")
    p_run.add_argument("--small", type=int, default=100_000)
    p_run.add_argument("--large", type=int, default=1_000_000)
    p_run.add_argument("--keep", action="store_true", help="keep generated corpora")

    args = parser.parse_args(argv)
    if args.command == "generate":
        generate(args.out, args.lines, args.seed)
        return 0
    if args.command == "measure":
        print(json.dumps(measure(args.file)))
        return 0
    print(json.dumps(run(args.small, args.large, keep=args.keep), indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
