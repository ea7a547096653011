"""Parser for line-oriented (subject, predicate, object) model output.

Total function: never raises on model text. Lines that do not yield a
triple are reported with a reason instead; lines with junk after the
closing parenthesis still parse but produce a warning. The body splits
on its first two commas, so commas beyond the second stay inside the
object field (model output routinely embeds clauses there).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..textutil import collapse_ws

SKIP_NO_PARENS = "no_parens"
SKIP_TOO_FEW_FIELDS = "too_few_fields"
SKIP_EMPTY_FIELD = "empty_field"
WARN_TRAILING_TEXT = "trailing_text"

# Leading bullets ("-", "*", "•") and numbering ("1.", "2)"), possibly stacked.
_LEAD_MARKERS = re.compile(r"^(?:[-*•]+\s*|\d+[.)]\s+)+")


@dataclass
class RawTriple:
    subject: str
    predicate: str
    object: str
    source_chunk: int = -1

    def as_tuple(self) -> tuple[str, str, str]:
        return (self.subject, self.predicate, self.object)


@dataclass
class ParseOutcome:
    triples: list[RawTriple] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)
    warnings: list[dict] = field(default_factory=list)


def format_triple_line(subject: str, predicate: str, obj: str) -> str:
    """Inverse of the parser for well-formed fields (used by fixtures and tests)."""
    return f"({subject}, {predicate}, {obj})"


def parse_triple_lines(llm_output: str) -> ParseOutcome:
    outcome = ParseOutcome()
    for raw_line in llm_output.splitlines():
        line = raw_line.strip()
        if not line:
            continue
        stripped = _LEAD_MARKERS.sub("", line)
        open_idx = stripped.find("(")
        close_idx = stripped.rfind(")")
        if open_idx == -1 or close_idx == -1 or close_idx < open_idx:
            outcome.skipped.append({"line": line, "reason": SKIP_NO_PARENS})
            continue
        if stripped[close_idx + 1:].strip():
            outcome.warnings.append({"line": line, "reason": WARN_TRAILING_TEXT})
        body = stripped[open_idx + 1:close_idx]
        parts = body.split(",", 2)
        if len(parts) < 3:
            outcome.skipped.append({"line": line, "reason": SKIP_TOO_FEW_FIELDS})
            continue
        fields = [collapse_ws(part) for part in parts]
        if not all(fields):
            outcome.skipped.append({"line": line, "reason": SKIP_EMPTY_FIELD})
            continue
        outcome.triples.append(RawTriple(*fields))
    return outcome
