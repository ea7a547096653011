"""On-demand LLM verification of a triple against its stored evidence.

The model must return one strict JSON object; anything else, including
markdown fences or extra fields, is a SchemaViolation that carries the
offending payload verbatim. Assessments are recorded as judgments
attributed to the fixed reviewer id "llm-verifier" and never count as
human review coverage.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..errors import SchemaViolation
from ..llm.client import LlmClient, LlmRequest
from ..store.graph_store import GraphStore
from ..store.models import Judgment
from ..ingest.prompts import PromptRegistry, render

NO_EVIDENCE_PLACEHOLDER = "[No source sentence stored]"

VERDICTS = ("CORRECT", "NEEDS_IMPROVEMENT", "INCORRECT")
ACTION_HINTS = ("keep", "edit", "delete")

_REQUIRED_KEYS = {
    "verdict", "confidence", "reasoning", "evidence_quote",
    "issues", "suggested_triplet", "expert_action_hint",
}
_TRIPLET_KEYS = {"subject", "predicate", "object"}


@dataclass
class VerifierAssessment:
    verdict: str
    confidence: float
    reasoning: str
    evidence_quote: str
    issues: list[str]
    suggested_triplet: dict
    expert_action_hint: str

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "confidence": self.confidence,
            "reasoning": self.reasoning,
            "evidence_quote": self.evidence_quote,
            "issues": self.issues,
            "suggested_triplet": self.suggested_triplet,
            "expert_action_hint": self.expert_action_hint,
        }


def parse_assessment(payload: str) -> VerifierAssessment:
    """Strict parse of the verifier response; raises SchemaViolation."""
    try:
        data = json.loads(payload)
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"response is not valid JSON: {exc}", payload)
    if not isinstance(data, dict):
        raise SchemaViolation("response is not a JSON object", payload)
    if set(data) != _REQUIRED_KEYS:
        missing = sorted(_REQUIRED_KEYS - set(data))
        extra = sorted(set(data) - _REQUIRED_KEYS)
        raise SchemaViolation(f"wrong field set (missing={missing}, extra={extra})", payload)
    if data["verdict"] not in VERDICTS:
        raise SchemaViolation(f"invalid verdict: {data['verdict']!r}", payload)
    if not isinstance(data["confidence"], (int, float)) or isinstance(data["confidence"], bool) \
            or not 0.0 <= float(data["confidence"]) <= 1.0:
        raise SchemaViolation(f"confidence out of range: {data['confidence']!r}", payload)
    if not isinstance(data["reasoning"], str) or not isinstance(data["evidence_quote"], str):
        raise SchemaViolation("reasoning and evidence_quote must be strings", payload)
    if not isinstance(data["issues"], list) or not all(isinstance(i, str) for i in data["issues"]):
        raise SchemaViolation("issues must be a list of strings", payload)
    triplet = data["suggested_triplet"]
    if not isinstance(triplet, dict) or set(triplet) != _TRIPLET_KEYS \
            or not all(isinstance(v, str) for v in triplet.values()):
        raise SchemaViolation("suggested_triplet must have subject/predicate/object strings",
                              payload)
    if data["expert_action_hint"] not in ACTION_HINTS:
        raise SchemaViolation(f"invalid expert_action_hint: {data['expert_action_hint']!r}",
                              payload)
    return VerifierAssessment(
        verdict=data["verdict"],
        confidence=float(data["confidence"]),
        reasoning=data["reasoning"],
        evidence_quote=data["evidence_quote"],
        issues=list(data["issues"]),
        suggested_triplet=dict(triplet),
        expert_action_hint=data["expert_action_hint"],
    )


def run_verifier(store: GraphStore, triple_id: str, llm: LlmClient,
                 registry: PromptRegistry, model_id: str = "default",
                 temperature: float = 0.0, actor: str = "expert") -> VerifierAssessment:
    triple = store.get_triple(triple_id)
    view = store.triple_view(triple)
    document = store.document(triple.provenance.document_id)
    system, user_template = registry.evaluation_prompts()
    user = render(
        user_template,
        document_title=document.title,
        document_id=document.id,
        page="" if triple.provenance.page is None else triple.provenance.page,
        subject=view["subject"],
        predicate=view["predicate"],
        object=view["object"],
        evidence=triple.provenance.evidence_sentence or NO_EVIDENCE_PLACEHOLDER,
    )
    response = llm.complete(LlmRequest(model_id=model_id, system=system,
                                       user=user, temperature=temperature))
    assessment = parse_assessment(response.text)
    store.record_judgment(
        triple_id,
        Judgment.VERIFIER_REVIEWER,
        assessment.expert_action_hint,
        assessment.reasoning,
        suggested_triple=assessment.suggested_triplet,
        verdict=assessment.verdict,
        confidence=assessment.confidence,
        actor=actor,
    )
    return assessment
