"""Sliding-window chunking over concatenated page text.

Pages join with a single "\\n" separator; a page-offset table maps any
character offset back to its page number so evidence alignment can
report pages after chunking. Chunk starts advance by
(chunk_size - overlap) and the final chunk ends exactly at the end of
the text, so consecutive chunks share exactly `overlap` characters and
every offset is covered.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field

from ..errors import InvalidConfig
from ..store.models import PageText


@dataclass
class ChunkConfig:
    chunk_size: int = 4000
    overlap: int = 200

    def validate(self) -> None:
        if self.chunk_size <= 0:
            raise InvalidConfig("chunk_size must be positive")
        if self.overlap < 0:
            raise InvalidConfig("overlap must be non-negative")
        if self.overlap >= self.chunk_size:
            raise InvalidConfig("overlap must be smaller than chunk_size")


@dataclass
class PageMap:
    """Offset table: starts[i] is the offset where page numbers[i] begins."""

    starts: list[int] = field(default_factory=list)
    numbers: list[int] = field(default_factory=list)

    def page_at(self, offset: int) -> int:
        idx = bisect.bisect_right(self.starts, offset) - 1
        return self.numbers[max(idx, 0)]


@dataclass
class Chunk:
    index: int
    start: int
    end: int  # exclusive
    text: str
    page_range: tuple[int, int]


def join_pages(pages: list[PageText]) -> tuple[str, PageMap]:
    if any(p.page <= 0 for p in pages):
        raise InvalidConfig("page numbers must be positive")
    numbers = [p.page for p in pages]
    if numbers != sorted(set(numbers)):
        raise InvalidConfig("page numbers must be strictly increasing and unique")
    page_map = PageMap()
    parts = []
    offset = 0
    for p in pages:
        page_map.starts.append(offset)
        page_map.numbers.append(p.page)
        parts.append(p.text)
        offset += len(p.text) + 1  # the "\n" separator
    return "\n".join(parts), page_map


def chunk_text(full_text: str, config: ChunkConfig,
               page_map: PageMap | None = None) -> list[Chunk]:
    config.validate()
    if not full_text:
        return []
    stride = config.chunk_size - config.overlap
    chunks: list[Chunk] = []
    start = 0
    while True:
        end = min(start + config.chunk_size, len(full_text))
        if page_map is not None and page_map.starts:
            page_range = (page_map.page_at(start), page_map.page_at(end - 1))
        else:
            page_range = (1, 1)
        chunks.append(Chunk(
            index=len(chunks), start=start, end=end,
            text=full_text[start:end], page_range=page_range,
        ))
        if end >= len(full_text):
            break
        start += stride
    return chunks
