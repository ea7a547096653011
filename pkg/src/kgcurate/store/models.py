"""Domain records held by the graph store."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional


class TripleStatus(str, Enum):
    DRAFT = "Draft"
    CERTIFIED = "Certified"
    REJECTED = "Rejected"


class TripleOrigin(str, Enum):
    LLM_EXTRACTION = "llm_extraction"
    EXPERT_ADDED = "expert_added"


class DocumentState(str, Enum):
    INGESTING = "Ingesting"
    DRAFT = "Draft"
    UNDER_REVIEW = "UnderReview"
    CERTIFIED = "Certified"


@dataclass
class PageText:
    """One page of pre-extracted document text (1-based page numbers)."""

    page: int
    text: str

    def to_dict(self) -> dict:
        return {"page": self.page, "text": self.text}


@dataclass
class Provenance:
    """Link from a triple back to its source document.

    ``evidence_sentence``, when present, is a verbatim substring of the
    stored page text for (document_id, page) up to whitespace
    normalization.
    """

    document_id: str
    page: Optional[int] = None
    chunk_index: Optional[int] = None
    evidence_sentence: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "document_id": self.document_id,
            "page": self.page,
            "chunk_index": self.chunk_index,
            "evidence_sentence": self.evidence_sentence,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Provenance":
        return cls(
            document_id=d["document_id"],
            page=d.get("page"),
            chunk_index=d.get("chunk_index"),
            evidence_sentence=d.get("evidence_sentence"),
        )


@dataclass
class EntityNode:
    id: str
    graph_id: str
    name: str
    created_at: str
    created_by: str

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "graph_id": self.graph_id,
            "name": self.name,
            "created_at": self.created_at,
            "created_by": self.created_by,
        }


@dataclass
class TripleRecord:
    """One (subject, predicate, object) fact plus provenance and audit fields.

    Subject and object are entity id references; resolve names through
    the owning store.
    """

    id: str
    graph_id: str
    subject_id: str
    predicate: str
    object_id: str
    status: TripleStatus
    deleted: bool
    provenance: Provenance
    origin: TripleOrigin
    created_by: str
    created_at: str
    last_updated_by: str
    last_updated_at: str

    def copy(self) -> "TripleRecord":
        return replace(self, provenance=replace(self.provenance))


@dataclass
class GraphInfo:
    id: str
    primary_document_id: Optional[str]
    created_at: str
    created_by: str
    frozen: bool = False


@dataclass
class DocumentRecord:
    id: str
    graph_id: str
    title: str
    state: DocumentState
    standard: str
    pages: list[PageText]
    created_by: str
    created_at: str
    ingest_report: Optional[dict] = None
    certified_at: Optional[str] = None
    certified_by: Optional[str] = None

    def page_text(self, page: int) -> Optional[str]:
        for p in self.pages:
            if p.page == page:
                return p.text
        return None


@dataclass
class GraphStats:
    node_count: int
    edge_count: int
    deleted_count: int
    predicate_histogram: dict[str, int]

    def to_dict(self) -> dict:
        return {
            "node_count": self.node_count,
            "edge_count": self.edge_count,
            "deleted_count": self.deleted_count,
            "predicate_histogram": dict(self.predicate_histogram),
        }


@dataclass
class Subgraph:
    """A view over a graph: nodes, edges, and whether an edge cap truncated it."""

    nodes: list[EntityNode]
    edges: list[TripleRecord]
    truncated: bool
    stats: GraphStats


@dataclass
class Path:
    """A simple path as alternating node/edge sequence.

    nodes[i] -- edges[i] -- nodes[i+1]; len(nodes) == len(edges) + 1.
    """

    nodes: list[EntityNode]
    edges: list[TripleRecord]

    @property
    def length(self) -> int:
        return len(self.edges)


@dataclass
class QueryFilter:
    """Edge filter shared by neighborhood queries and exports."""

    predicates: Optional[set[str]] = None
    document_ids: Optional[set[str]] = None
    include_deleted: bool = False

    def matches(self, triple: TripleRecord) -> bool:
        if triple.deleted and not self.include_deleted:
            return False
        if self.predicates is not None and triple.predicate not in self.predicates:
            return False
        if self.document_ids is not None and triple.provenance.document_id not in self.document_ids:
            return False
        return True


@dataclass
class Judgment:
    """One reviewer's attributable verdict on one triple.

    ``reviewer`` is an account id, or the fixed string "llm-verifier"
    for machine assessments. Machine judgments never count toward
    review coverage.
    """

    id: str
    triple_id: str
    reviewer: str
    action: str  # keep | edit | delete
    feedback: str
    created_at: str
    suggested_triple: Optional[dict] = None
    verdict: Optional[str] = None
    confidence: Optional[float] = None

    VERIFIER_REVIEWER = "llm-verifier"

    @property
    def is_human(self) -> bool:
        return self.reviewer != self.VERIFIER_REVIEWER

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "triple_id": self.triple_id,
            "reviewer": self.reviewer,
            "action": self.action,
            "feedback": self.feedback,
            "created_at": self.created_at,
            "suggested_triple": self.suggested_triple,
            "verdict": self.verdict,
            "confidence": self.confidence,
        }


JUDGMENT_ACTIONS = ("keep", "edit", "delete")
