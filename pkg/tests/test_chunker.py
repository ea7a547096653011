from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kgcurate.errors import InvalidConfig
from kgcurate.ingest.chunker import ChunkConfig, chunk_text, join_pages
from kgcurate.store.models import PageText


def sliding_window_oracle(length: int, size: int, overlap: int) -> list[tuple[int, int]]:
    """Independent enumeration of (start, end) pairs."""
    if length == 0:
        return []
    stride = size - overlap
    spans = []
    start = 0
    while True:
        end = min(start + size, length)
        spans.append((start, end))
        if end == length:
            return spans
        start += stride


def test_default_config_on_9000_chars():
    chunks = chunk_text("x" * 9000, ChunkConfig())
    assert [c.start for c in chunks] == [0, 3800, 7600]
    assert [c.end - c.start for c in chunks] == [4000, 4000, 1400]


def test_short_text_single_chunk():
    chunks = chunk_text("y" * 100, ChunkConfig())
    assert [(c.start, c.end) for c in chunks] == [(0, 100)]


def test_empty_text_no_chunks():
    assert chunk_text("", ChunkConfig()) == []


def test_invalid_overlap_rejected():
    with pytest.raises(InvalidConfig):
        chunk_text("abc", ChunkConfig(chunk_size=10, overlap=10))
    with pytest.raises(InvalidConfig):
        chunk_text("abc", ChunkConfig(chunk_size=0, overlap=0))


def assert_chunk_invariants(text: str, config: ChunkConfig) -> None:
    chunks = chunk_text(text, config)
    oracle = sliding_window_oracle(len(text), config.chunk_size, config.overlap)
    assert [(c.start, c.end) for c in chunks] == oracle
    if not text:
        return
    # Full coverage, in order, ending exactly at the end of text.
    assert chunks[0].start == 0
    assert chunks[-1].end == len(text)
    stride = config.chunk_size - config.overlap
    for a, b in zip(chunks, chunks[1:]):
        assert b.start == a.start + stride
        assert a.end >= b.start  # contiguous or overlapping
        # Exact overlap region equality.
        shared = a.end - b.start
        assert text[b.start:a.end] == b.text[:shared]
    for c in chunks:
        assert c.text == text[c.start:c.end]
        assert c.end - c.start == len(c.text)


def test_randomized_cases_match_oracle():
    rng = random.Random(42)
    for _ in range(300):
        length = rng.randrange(0, 20_000)
        size = rng.randrange(100, 8001)
        overlap = rng.randrange(0, size)
        assert_chunk_invariants("a" * length, ChunkConfig(size, overlap))


@settings(max_examples=60, deadline=None)
@given(
    text=st.text(min_size=0, max_size=2000),
    size=st.integers(min_value=5, max_value=500),
    data=st.data(),
)
def test_chunk_properties_hypothesis(text, size, data):
    overlap = data.draw(st.integers(min_value=0, max_value=size - 1))
    assert_chunk_invariants(text, ChunkConfig(size, overlap))


def test_page_map_resolves_offsets():
    pages = [PageText(1, "aaaa"), PageText(2, "bbbb"), PageText(3, "cccc")]
    text, page_map = join_pages(pages)
    assert text == "aaaa\nbbbb\ncccc"
    assert page_map.page_at(0) == 1
    assert page_map.page_at(3) == 1
    assert page_map.page_at(5) == 2
    assert page_map.page_at(10) == 3
    chunks = chunk_text(text, ChunkConfig(chunk_size=6, overlap=2), page_map)
    assert chunks[0].page_range == (1, 2)


def test_join_pages_requires_increasing_numbers():
    with pytest.raises(InvalidConfig):
        join_pages([PageText(2, "x"), PageText(1, "y")])
    with pytest.raises(InvalidConfig):
        join_pages([PageText(1, "x"), PageText(1, "y")])
