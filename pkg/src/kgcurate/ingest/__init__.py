from .chunker import Chunk, ChunkConfig, PageMap, chunk_text, join_pages
from .evidence import align_evidence, split_sentences
from .identify import identify_standard
from .parser import ParseOutcome, RawTriple, format_triple_line, parse_triple_lines
from .pipeline import (
    IngestConfig,
    IngestReport,
    IntakeDocument,
    extract_chunk,
    ingest_document,
)
from .prompts import PromptRegistry, render, select_prompt

__all__ = [
    "Chunk",
    "ChunkConfig",
    "IngestConfig",
    "IngestReport",
    "IntakeDocument",
    "PageMap",
    "ParseOutcome",
    "PromptRegistry",
    "RawTriple",
    "align_evidence",
    "chunk_text",
    "extract_chunk",
    "format_triple_line",
    "identify_standard",
    "ingest_document",
    "join_pages",
    "parse_triple_lines",
    "render",
    "select_prompt",
    "split_sentences",
]
