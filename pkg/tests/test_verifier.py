from __future__ import annotations

import json

import pytest

from kgcurate.errors import SchemaViolation
from kgcurate.governance.verifier import (
    NO_EVIDENCE_PLACEHOLDER,
    parse_assessment,
    run_verifier,
)
from kgcurate.ingest.prompts import PromptRegistry
from kgcurate.store.models import Judgment

from conftest import ScriptedClient, insert, make_document, make_store


def conforming(**overrides) -> str:
    body = {
        "verdict": "CORRECT",
        "confidence": 0.92,
        "reasoning": "Directly supported by the evidence sentence.",
        "evidence_quote": "A relates to b.",
        "issues": [],
        "suggested_triplet": {"subject": "a", "predicate": "rel", "object": "b"},
        "expert_action_hint": "keep",
    }
    body.update(overrides)
    return json.dumps(body)


def test_parse_conforming_response():
    assessment = parse_assessment(conforming())
    assert assessment.verdict == "CORRECT"
    assert assessment.expert_action_hint == "keep"
    assert assessment.confidence == pytest.approx(0.92)


def test_markdown_fences_rejected_payload_preserved():
    payload = f"```json\n{conforming()}\n```"
    with pytest.raises(SchemaViolation) as excinfo:
        parse_assessment(payload)
    assert excinfo.value.payload == payload


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("confidence"),
    lambda d: d.update(confidence=1.5),
    lambda d: d.update(confidence="high"),
    lambda d: d.update(verdict="MAYBE"),
    lambda d: d.update(expert_action_hint="ignore"),
    lambda d: d.update(extra_field=1),
    lambda d: d.update(issues="none"),
    lambda d: d.update(suggested_triplet={"subject": "a"}),
])
def test_parse_rejects_violations(mutate):
    body = json.loads(conforming())
    mutate(body)
    payload = json.dumps(body)
    with pytest.raises(SchemaViolation) as excinfo:
        parse_assessment(payload)
    assert excinfo.value.payload == payload


def test_parse_rejects_non_object():
    with pytest.raises(SchemaViolation):
        parse_assessment("[1, 2, 3]")
    with pytest.raises(SchemaViolation):
        parse_assessment("plain text, no json")


def verifier_fixture():
    store = make_store()
    doc = make_document(store, page_text="A relates to b. Unused filler sentence.")
    triple = insert(store, doc.graph_id, doc.id, "a", "rel", "b",
                    page=1, evidence="A relates to b.")
    registry = PromptRegistry.load()
    return store, doc, triple, registry


def test_run_verifier_records_machine_judgment():
    store, doc, triple, registry = verifier_fixture()
    llm = ScriptedClient([conforming()])
    assessment = run_verifier(store, triple.id, llm, registry, actor="alice")
    assert assessment.verdict == "CORRECT"
    judgments = store.judgments_for(triple.id)
    assert judgments[-1].reviewer == Judgment.VERIFIER_REVIEWER
    assert judgments[-1].verdict == "CORRECT"
    assert judgments[-1].action == "keep"
    # The rendered prompt carries triple fields and the stored evidence.
    user = llm.requests[0].user
    assert "subject: a" in user and "A relates to b." in user
    assert doc.title in user


def test_run_verifier_without_evidence_uses_placeholder():
    store, doc, _, registry = verifier_fixture()
    bare = insert(store, doc.graph_id, doc.id, "x", "rel", "y")
    llm = ScriptedClient([conforming()])
    run_verifier(store, bare.id, llm, registry)
    assert NO_EVIDENCE_PLACEHOLDER in llm.requests[0].user


def test_run_verifier_schema_violation_passthrough():
    store, _, triple, registry = verifier_fixture()
    llm = ScriptedClient(["```json\n{}\n```"])
    with pytest.raises(SchemaViolation) as excinfo:
        run_verifier(store, triple.id, llm, registry)
    assert excinfo.value.payload == "```json\n{}\n```"
    # No judgment recorded on failure.
    assert all(j.reviewer != Judgment.VERIFIER_REVIEWER
               for j in store.judgments_for(triple.id))
