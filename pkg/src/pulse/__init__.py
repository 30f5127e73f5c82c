"""pulse: streaming news-signal ingestion, analytics, and a read-only JSON API."""

__version__ = "0.1.0"
