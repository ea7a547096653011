"""Evidence alignment: pick the sentence a triple most plausibly came from.

Sentences break after '.', '?' or '!' followed by whitespace, and at
newlines. Because pages join with a newline, no sentence can span a
page boundary, so the page lookup through the offset table is exact.
The heuristic prefers the first sentence containing both subject and
object (case-insensitive substring), then the first containing just
the subject, else no evidence.
"""

from __future__ import annotations

import re
from typing import Optional

from ..store.models import Provenance
from ..textutil import collapse_ws
from .chunker import Chunk, PageMap
from .parser import RawTriple

_BOUNDARY = re.compile(r"[.?!]+(?=\s)|\n")


def split_sentences(text: str) -> list[tuple[int, str]]:
    """(offset, sentence) pairs; offsets point at the first kept character."""
    spans = []
    start = 0
    for match in _BOUNDARY.finditer(text):
        end = match.end()
        spans.append((start, text[start:end]))
        start = end
    if start < len(text):
        spans.append((start, text[start:]))

    out = []
    for offset, sentence in spans:
        stripped = sentence.strip()
        if not stripped:
            continue
        out.append((offset + sentence.index(stripped[0]), stripped))
    return out


def align_evidence(triple: RawTriple, chunk: Chunk, page_map: PageMap,
                   document_id: str) -> Optional[Provenance]:
    subject = triple.subject.lower()
    obj = triple.object.lower()
    sentences = split_sentences(chunk.text)

    best = None
    for offset, sentence in sentences:
        lowered = sentence.lower()
        if subject in lowered and obj in lowered:
            best = (offset, sentence)
            break
    if best is None:
        for offset, sentence in sentences:
            if subject in sentence.lower():
                best = (offset, sentence)
                break
    if best is None:
        return None

    offset, sentence = best
    page = page_map.page_at(chunk.start + offset)
    return Provenance(
        document_id=document_id,
        page=page,
        chunk_index=chunk.index,
        evidence_sentence=collapse_ws(sentence),
    )
