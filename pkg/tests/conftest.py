from __future__ import annotations

import json
from pathlib import Path

import pytest

from kgcurate.llm.client import LlmRequest, LlmResponse
from kgcurate.store.graph_store import GraphStore
from kgcurate.store.models import PageText, Provenance

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"
INTAKE_PATH = FIXTURES_DIR / "managed_care_intake.json"
REPLAY_PATH = FIXTURES_DIR / "managed_care_replay.jsonl"


def fixed_clock():
    return "2024-01-01T00:00:00+00:00"


class ScriptedClient:
    """LLM stub answering from a queue of texts (or a callable)."""

    def __init__(self, responses):
        self.responses = list(responses)
        self.requests: list[LlmRequest] = []

    def complete(self, request: LlmRequest) -> LlmResponse:
        self.requests.append(request)
        item = self.responses.pop(0)
        if isinstance(item, Exception):
            raise item
        if callable(item):
            return LlmResponse(text=item(request))
        return LlmResponse(text=item)


def make_store(tmp_path=None, clock=None) -> GraphStore:
    kwargs = {}
    if tmp_path is not None:
        kwargs["data_dir"] = tmp_path
    if clock is not None:
        kwargs["clock"] = clock
    return GraphStore(**kwargs)


def make_document(store: GraphStore, title: str = "Doc",
                  page_text: str = "Background text for testing. More prose here."):
    from kgcurate.store.models import DocumentState

    doc = store.register_document(title, [PageText(page=1, text=page_text)], "tester")
    return store.set_document_state(doc.id, DocumentState.DRAFT, "tester")


def insert(store: GraphStore, graph_id: str, document_id: str,
           subject: str, predicate: str, obj: str, page=None, evidence=None,
           actor: str = "tester"):
    record, _ = store.insert_triple(
        graph_id, subject, predicate, obj,
        Provenance(document_id=document_id, page=page, evidence_sentence=evidence),
        actor,
    )
    return record


@pytest.fixture
def store():
    return make_store()


@pytest.fixture
def store_with_doc():
    s = make_store()
    doc = make_document(s)
    return s, doc


@pytest.fixture
def intake_payload() -> dict:
    return json.loads(INTAKE_PATH.read_text(encoding="utf-8"))
