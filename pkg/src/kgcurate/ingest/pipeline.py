"""Document ingestion pipeline.

Takes pre-extracted page text and drives the full path to a Draft
graph: family identification, chunking, per-chunk extraction, line
parsing, evidence alignment, and provenance-first insertion. Problems
inside a chunk never abort the run; they accumulate as warnings on the
report.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from ..errors import EmptyDocument, LlmUnavailable, Unauthorized
from ..governance.rbac import Role
from ..llm.client import LlmClient, LlmRequest
from ..store.graph_store import GraphStore
from ..store.models import DocumentState, PageText, Provenance, TripleOrigin
from .chunker import Chunk, ChunkConfig, chunk_text, join_pages
from .evidence import align_evidence
from .identify import DEFAULT_SNIPPET_CHARS, identify_standard
from .parser import ParseOutcome, parse_triple_lines
from .prompts import PromptRegistry, select_prompt

WARN_EMPTY_RESPONSE = "empty_response"
WARN_CHUNK_FAILED = "chunk_failed"


@dataclass
class IntakeDocument:
    title: str
    pages: list[PageText]

    @classmethod
    def from_dict(cls, data: dict) -> "IntakeDocument":
        pages = [PageText(page=int(p["page"]), text=str(p["text"]))
                 for p in data.get("pages", [])]
        return cls(title=str(data.get("title", "")), pages=pages)

    @classmethod
    def from_file(cls, path: Path) -> "IntakeDocument":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


@dataclass
class IngestConfig:
    chunk: ChunkConfig = field(default_factory=ChunkConfig)
    standard_override: Optional[str] = None
    snippet_chars: int = DEFAULT_SNIPPET_CHARS
    model_id: str = "default"
    temperature: float = 0.0
    retries: int = 2
    backoff_seconds: float = 0.2


@dataclass
class IngestReport:
    document_id: str
    graph_id: str
    standard: str
    chunk_count: int
    triples_inserted: int = 0
    triples_deduped: int = 0
    lines_skipped: int = 0
    warnings: list[dict] = field(default_factory=list)
    failed_chunks: list[int] = field(default_factory=list)
    duration_seconds: float = 0.0

    def to_dict(self) -> dict:
        return {
            "document_id": self.document_id,
            "graph_id": self.graph_id,
            "standard": self.standard,
            "chunk_count": self.chunk_count,
            "triples_inserted": self.triples_inserted,
            "triples_deduped": self.triples_deduped,
            "lines_skipped": self.lines_skipped,
            "warnings": self.warnings,
            "failed_chunks": self.failed_chunks,
            "duration_seconds": self.duration_seconds,
        }


def extract_chunk(chunk: Chunk, prompts: dict, llm: LlmClient,
                  model_id: str = "default", temperature: float = 0.0,
                  retries: int = 2, backoff_seconds: float = 0.2,
                  sleep: Callable[[float], None] = time.sleep,
                  ) -> tuple[ParseOutcome, bool]:
    """Run one chunk through the model and the parser.

    Returns (outcome, failed). Transport failures retry with
    exponential backoff; when retries run out the chunk is marked
    failed and the pipeline moves on.
    """
    template = prompts["user_prompt_template"]
    user = template.replace("{content}", chunk.text).replace("{chunk}", chunk.text)
    request = LlmRequest(model_id=model_id, system=prompts["system_prompt"],
                         user=user, temperature=temperature)
    attempts = retries + 1
    for attempt in range(attempts):
        try:
            response = llm.complete(request)
            break
        except LlmUnavailable:
            if attempt == attempts - 1:
                return ParseOutcome(), True
            sleep(backoff_seconds * (2 ** attempt))
    outcome = parse_triple_lines(response.text)
    if not response.text.strip():
        outcome.warnings.append({"line": "", "reason": WARN_EMPTY_RESPONSE})
    for triple in outcome.triples:
        triple.source_chunk = chunk.index
    return outcome, False


def ingest_document(intake: IntakeDocument, config: IngestConfig,
                    registry: PromptRegistry, llm: LlmClient, store: GraphStore,
                    actor: str, role: Role = Role.EXPERT,
                    progress: Optional[Callable[[int, int], None]] = None,
                    on_registered: Optional[Callable[..., None]] = None,
                    ) -> IngestReport:
    started = time.monotonic()
    if role not in (Role.EXPERT, Role.META_EXPERT):
        raise Unauthorized(f"role {role.value} may not ingest documents")
    if not intake.pages or all(not p.text.strip() for p in intake.pages):
        raise EmptyDocument("intake has no non-empty pages")
    if not intake.title.strip():
        raise EmptyDocument("intake has no title")

    full_text, page_map = join_pages(intake.pages)
    document = store.register_document(intake.title, intake.pages, actor)
    if on_registered is not None:
        on_registered(document)

    if config.standard_override:
        standard = config.standard_override
    else:
        snippet = intake.pages[0].text[:config.snippet_chars]
        standard = identify_standard(snippet, llm, registry,
                                     model_id=config.model_id,
                                     temperature=config.temperature)
    store.set_document_state(document.id, DocumentState.INGESTING, actor, standard=standard)

    chunks = chunk_text(full_text, config.chunk, page_map)
    prompts = select_prompt(standard, registry)
    report = IngestReport(document_id=document.id, graph_id=document.graph_id,
                          standard=standard, chunk_count=len(chunks))

    for chunk in chunks:
        outcome, failed = extract_chunk(
            chunk, prompts, llm,
            model_id=config.model_id, temperature=config.temperature,
            retries=config.retries, backoff_seconds=config.backoff_seconds,
        )
        if failed:
            report.failed_chunks.append(chunk.index)
            report.warnings.append({"chunk_index": chunk.index, "line": "",
                                    "reason": WARN_CHUNK_FAILED})
        for item in outcome.skipped:
            report.lines_skipped += 1
            report.warnings.append({"chunk_index": chunk.index, **item})
        for item in outcome.warnings:
            report.warnings.append({"chunk_index": chunk.index, **item})
        for triple in outcome.triples:
            provenance = align_evidence(triple, chunk, page_map, document.id)
            if provenance is None:
                provenance = Provenance(document_id=document.id, chunk_index=chunk.index)
            _, created = store.insert_triple(
                document.graph_id, triple.subject, triple.predicate, triple.object,
                provenance, actor, origin=TripleOrigin.LLM_EXTRACTION,
            )
            if created:
                report.triples_inserted += 1
            else:
                report.triples_deduped += 1
        if progress is not None:
            progress(chunk.index + 1, len(chunks))

    report.duration_seconds = round(time.monotonic() - started, 6)
    store.set_document_state(document.id, DocumentState.DRAFT, actor)
    store.record_ingest_report(document.id, report.to_dict(), actor)
    return report
