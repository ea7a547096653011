"""Independent review, adjudication, readiness, and certification.

Judgments are opinions, decoupled from triple CRUD: recording one
never mutates the triple itself (a delete judgment may opt in to an
immediate soft delete via apply=True). Conflicts exist only between
human reviewers; the machine verifier's verdicts are advisory and
never create, resolve, or count toward anything. A document certifies
once every live triple has human coverage and no conflict remains:
unanimous-keep triples auto-promote, everything contested needs a
meta-expert verdict first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..errors import DocumentCertified, EmptyField, NotFound, NotReady, WrongState
from ..store.graph_store import GraphStore
from ..store.models import (
    DocumentState,
    JUDGMENT_ACTIONS,
    Judgment,
    TripleRecord,
    TripleStatus,
)

DEFAULT_COVERAGE_THRESHOLD = 1.0


@dataclass
class ReadinessReport:
    document_id: str
    total_triples: int          # live (non-deleted) triples
    inserted_triples: int       # everything ever inserted for the document
    reviewed_triples: int
    coverage: float
    unresolved_conflicts: int
    finalized_triples: int
    retained_triples: int
    retention: float
    certifiable: bool
    high_risk: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "document_id": self.document_id,
            "total_triples": self.total_triples,
            "inserted_triples": self.inserted_triples,
            "reviewed_triples": self.reviewed_triples,
            "coverage": self.coverage,
            "unresolved_conflicts": self.unresolved_conflicts,
            "finalized_triples": self.finalized_triples,
            "retained_triples": self.retained_triples,
            "retention": self.retention,
            "certifiable": self.certifiable,
            "high_risk": self.high_risk,
        }


def submit_judgment(store: GraphStore, triple_id: str, reviewer: str, action: str,
                    feedback: str = "", suggested_triple: Optional[dict] = None,
                    verdict: Optional[str] = None, confidence: Optional[float] = None,
                    apply: bool = False) -> Judgment:
    if action not in JUDGMENT_ACTIONS:
        raise EmptyField(f"invalid judgment action: {action}")
    if action == "edit" and not suggested_triple:
        raise EmptyField("edit judgments must carry a suggested triple")
    triple = store.get_triple(triple_id)
    if triple.deleted:
        raise NotFound(f"triple {triple_id} is deleted")
    document = store.document(triple.provenance.document_id)
    if document.state is DocumentState.CERTIFIED:
        raise DocumentCertified(f"document {document.id} is certified")
    if document.state not in (DocumentState.DRAFT, DocumentState.UNDER_REVIEW):
        raise WrongState(f"document {document.id} is {document.state.value}")

    judgment, _ = store.record_judgment(
        triple_id, reviewer, action, feedback,
        suggested_triple=suggested_triple, verdict=verdict, confidence=confidence,
    )
    if document.state is DocumentState.DRAFT:
        store.set_document_state(document.id, DocumentState.UNDER_REVIEW, reviewer)
    if apply and action == "delete":
        store.soft_delete_triple(triple.graph_id, triple_id, reviewer)
    return judgment


def aggregate_judgments(store: GraphStore, triple_id: str) -> dict:
    judgments = store.judgments_for(triple_id)
    human_actions = [j.action for j in judgments if j.is_human]
    verifier_verdicts = [j.verdict for j in judgments if not j.is_human and j.verdict]
    finalization = store.finalization_for(triple_id)
    return {
        "triple_id": triple_id,
        "human_actions": human_actions,
        "verifier": verifier_verdicts[-1] if verifier_verdicts else None,
        "conflict": len(set(human_actions)) >= 2,
        "meta_verdict": finalization["final"] if finalization else None,
    }


def meta_finalize_triple(store: GraphStore, triple_id: str, final: str, note: str,
                         actor: str) -> TripleRecord:
    triple = store.get_triple(triple_id)
    document = store.document(triple.provenance.document_id)
    if document.state is not DocumentState.UNDER_REVIEW:
        raise WrongState(f"document {document.id} is {document.state.value}, "
                         "finalization requires UnderReview")
    return store.finalize_triple(triple_id, final, note, actor)


def readiness(store: GraphStore, document_id: str,
              coverage_threshold: float = DEFAULT_COVERAGE_THRESHOLD) -> ReadinessReport:
    store.document(document_id)
    all_triples = store.triples_of_document(document_id, include_deleted=True)
    live = [t for t in all_triples if not t.deleted]

    reviewed = 0
    conflicts = 0
    high_risk: list[str] = []
    for triple in live:
        agg = aggregate_judgments(store, triple.id)
        if agg["human_actions"]:
            reviewed += 1
        if agg["conflict"] and agg["meta_verdict"] is None:
            conflicts += 1
        if agg["verifier"] == "INCORRECT" and "keep" in agg["human_actions"]:
            high_risk.append(triple.id)

    finalized = sum(1 for t in all_triples if t.status is not TripleStatus.DRAFT)
    coverage = reviewed / len(live) if live else 1.0
    retention = len(live) / len(all_triples) if all_triples else 1.0
    return ReadinessReport(
        document_id=document_id,
        total_triples=len(live),
        inserted_triples=len(all_triples),
        reviewed_triples=reviewed,
        coverage=coverage,
        unresolved_conflicts=conflicts,
        finalized_triples=finalized,
        retained_triples=len(live),
        retention=retention,
        certifiable=coverage >= coverage_threshold and conflicts == 0,
        high_risk=high_risk,
    )


def certify_document(store: GraphStore, document_id: str, actor: str,
                     coverage_threshold: float = DEFAULT_COVERAGE_THRESHOLD) -> dict:
    document = store.document(document_id)
    if document.state is DocumentState.CERTIFIED:
        raise WrongState(f"document {document_id} is already certified")
    report = readiness(store, document_id, coverage_threshold)
    if not report.certifiable:
        raise NotReady("document is not ready for certification",
                       detail=report.to_dict())

    promoted = []
    live = store.triples_of_document(document_id)
    for triple in live:
        if triple.status is not TripleStatus.DRAFT:
            continue
        actions = set(aggregate_judgments(store, triple.id)["human_actions"])
        if actions == {"keep"}:
            promoted.append(triple.id)
    certified_total = sum(
        1 for t in store.triples_of_document(document_id)
        if t.status is TripleStatus.CERTIFIED or t.id in promoted
    )
    return store.certify_document(document_id, promoted, certified_total, actor)
