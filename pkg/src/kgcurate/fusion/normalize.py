"""Entity-name normalization for cross-graph alignment.

Lowercase, replace every non-alphanumeric non-space character with a
space (so "Scope-1" and "Scope 1" unify instead of fusing to
"scope1"), collapse whitespace runs, trim. Idempotent by construction.
Unicode letters and digits count as alphanumeric; diacritics are kept
as-is.
"""

from __future__ import annotations


def normalize_entity(name: str) -> str:
    lowered = name.lower()
    spaced = "".join(c if c.isalnum() or c == " " else " " for c in lowered)
    return " ".join(spaced.split())
