"""Application hub: wires store, accounts, prompts, and LLM client together.

One Hub instance backs both the HTTP service and the CLI. Ingestion
runs as background jobs with chunk-level progress that the report
endpoint exposes while the document is still in the Ingesting state.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Optional

from ..errors import EmptyDocument, InvalidCredentials
from ..governance.accounts import AccountStore, Session
from ..governance.rbac import Role
from ..ingest.chunker import ChunkConfig
from ..ingest.pipeline import IngestConfig, IngestReport, IntakeDocument, ingest_document
from ..ingest.prompts import PromptRegistry
from ..llm.client import LlmClient
from ..llm.http_client import HttpLlmClient
from ..llm.replay import ReplayClient
from ..store.graph_store import GraphStore
from .config import ServiceConfig


def build_llm_client(config: ServiceConfig, transport=None) -> LlmClient:
    if config.llm.mode == "replay":
        return ReplayClient(config.llm.fixture_path)
    return HttpLlmClient(
        endpoint=config.llm.endpoint,
        model_id=config.llm.model_id,
        key_env=config.llm.key_env,
        transport=transport,
    )


@dataclass
class IngestJob:
    document_id: Optional[str] = None
    graph_id: Optional[str] = None
    chunks_done: int = 0
    chunk_count: int = 0
    state: str = "running"            # running | done | failed
    error: Optional[str] = None
    report: Optional[IngestReport] = None
    thread: Optional[threading.Thread] = field(default=None, repr=False)


class Hub:
    def __init__(self, config: ServiceConfig, llm: Optional[LlmClient] = None,
                 clock=None):
        self.config = config
        config.data_dir.mkdir(parents=True, exist_ok=True)
        store_kwargs = {"data_dir": config.data_dir / "graph"}
        if clock is not None:
            store_kwargs["clock"] = clock
        self.store = GraphStore(**store_kwargs)
        self.accounts = AccountStore(config.data_dir / "accounts.json",
                                     session_ttl_hours=config.session_ttl_hours)
        self.registry = PromptRegistry.load(config.prompt_registry)
        self.llm = llm if llm is not None else build_llm_client(config)
        self._jobs: dict[str, IngestJob] = {}
        self._jobs_lock = threading.Lock()

    def close(self) -> None:
        self.store.close()

    # --- auth -------------------------------------------------------------

    def session_from_token(self, token: Optional[str]) -> Session:
        if not token:
            raise InvalidCredentials("missing bearer token")
        return self.accounts.resolve_session(token)

    # --- ingestion jobs -----------------------------------------------------

    def start_ingest(self, intake: IntakeDocument, actor: str, role: Role,
                     chunk_size: Optional[int] = None, overlap: Optional[int] = None,
                     standard_override: Optional[str] = None,
                     wait: bool = False) -> IngestJob:
        # Shape problems surface synchronously; extraction runs in the job.
        if not intake.title.strip():
            raise EmptyDocument("intake has no title")
        if not intake.pages or all(not p.text.strip() for p in intake.pages):
            raise EmptyDocument("intake has no non-empty pages")

        chunk = ChunkConfig(
            chunk_size=chunk_size if chunk_size is not None else self.registry.chunk_size,
            overlap=overlap if overlap is not None else self.registry.overlap,
        )
        chunk.validate()
        ingest_config = IngestConfig(
            chunk=chunk,
            standard_override=standard_override,
            model_id=self.config.llm.model_id,
            temperature=self.config.llm.temperature,
        )
        job = IngestJob()
        registered = threading.Event()

        def on_progress(done: int, total: int) -> None:
            job.chunks_done, job.chunk_count = done, total

        def on_registered(document) -> None:
            job.document_id = document.id
            job.graph_id = document.graph_id
            with self._jobs_lock:
                self._jobs[document.id] = job
            registered.set()

        def run() -> None:
            try:
                report = ingest_document(intake, ingest_config, self.registry,
                                         self.llm, self.store, actor, role=role,
                                         progress=on_progress,
                                         on_registered=on_registered)
                job.report = report
                job.state = "done"
            except Exception as exc:  # job failures surface via the report endpoint
                job.state = "failed"
                job.error = str(exc)
            finally:
                registered.set()

        thread = threading.Thread(target=run, name="ingest-job", daemon=True)
        job.thread = thread
        thread.start()
        registered.wait(timeout=30)
        if wait:
            thread.join()
        if job.state == "failed" and job.document_id is None:
            # Failed before the document existed: nothing to poll, re-raise.
            raise EmptyDocument(job.error or "ingestion failed before registration")
        return job

    def job_for(self, document_id: str) -> Optional[IngestJob]:
        with self._jobs_lock:
            return self._jobs.get(document_id)
