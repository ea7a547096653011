"""Small text helpers shared across modules."""

from __future__ import annotations


def collapse_ws(text: str) -> str:
    """Collapse internal whitespace runs to single spaces and trim."""
    return " ".join(text.split())


def now_iso() -> str:
    from datetime import datetime, timezone

    return datetime.now(timezone.utc).isoformat()
