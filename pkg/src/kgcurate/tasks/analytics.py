"""Preset-driven LLM analytics over graph structure.

The graph payload embedded in the prompt grows with the depth level:
1 carries bare statistics, 2 adds schema diagnostics, 3 adds coverage
gaps and duplicate candidates. The model must answer with one strict
JSON object; fences, missing fields, or out-of-enum values raise
SchemaViolation with the payload preserved verbatim.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from ..errors import SchemaViolation
from ..ingest.prompts import ANALYSIS_PRESETS, PromptRegistry, render
from ..llm.client import LlmClient, LlmRequest
from ..store.graph_store import GraphStore
from .quality import coverage_gaps, detect_duplicates, schema_diagnostics

_REQUIRED_KEYS = {
    "overview", "graph_health", "top_risks", "coverage_gaps",
    "questionable_triples", "recommended_actions", "confidence_summary",
}
_SECTION_FIELDS = {
    "graph_health": ({"title", "status", "detail"}, {"status": ("good", "watch", "risk")}),
    "top_risks": ({"title", "severity", "detail"}, {"severity": ("high", "medium", "low")}),
    "coverage_gaps": ({"topic", "reason", "priority"}, {"priority": ("high", "medium", "low")}),
    "questionable_triples": ({"subject", "predicate", "object", "issue"}, {}),
    "recommended_actions": (
        {"title", "impact", "effort", "confidence", "why"},
        {"impact": ("H", "M", "L"), "effort": ("H", "M", "L"), "confidence": ("H", "M", "L")},
    ),
}

MODE_INSTRUCTIONS = {
    1: "Statistics overview: respond from the supplied counts only.",
    2: "Structural review: statistics plus schema diagnostics are supplied.",
    3: "Full review: statistics, diagnostics, coverage gaps, and duplicate candidates are supplied.",
}


@dataclass
class AnalysisReport:
    overview: str
    graph_health: list[dict]
    top_risks: list[dict]
    coverage_gaps: list[dict]
    questionable_triples: list[dict]
    recommended_actions: list[dict]
    confidence_summary: str

    def to_dict(self) -> dict:
        return {
            "overview": self.overview,
            "graph_health": self.graph_health,
            "top_risks": self.top_risks,
            "coverage_gaps": self.coverage_gaps,
            "questionable_triples": self.questionable_triples,
            "recommended_actions": self.recommended_actions,
            "confidence_summary": self.confidence_summary,
        }


def parse_analysis(payload: str) -> AnalysisReport:
    """Strict parse of the analytics response; raises SchemaViolation."""
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
    if not isinstance(data["overview"], str) or not isinstance(data["confidence_summary"], str):
        raise SchemaViolation("overview and confidence_summary must be strings", payload)
    for section, (fields, enums) in _SECTION_FIELDS.items():
        items = data[section]
        if not isinstance(items, list):
            raise SchemaViolation(f"{section} must be a list", payload)
        for item in items:
            if not isinstance(item, dict) or set(item) != fields:
                raise SchemaViolation(f"{section} items must have fields {sorted(fields)}",
                                      payload)
            if not all(isinstance(v, str) for v in item.values()):
                raise SchemaViolation(f"{section} item values must be strings", payload)
            for key, allowed in enums.items():
                if item[key] not in allowed:
                    raise SchemaViolation(
                        f"{section}.{key} must be one of {allowed}, got {item[key]!r}",
                        payload)
    return AnalysisReport(
        overview=data["overview"],
        graph_health=data["graph_health"],
        top_risks=data["top_risks"],
        coverage_gaps=data["coverage_gaps"],
        questionable_triples=data["questionable_triples"],
        recommended_actions=data["recommended_actions"],
        confidence_summary=data["confidence_summary"],
    )


def build_graph_payload(store: GraphStore, graph_id: str, depth: int,
                        standard: str = "unknown") -> dict:
    payload: dict = {"stats": store.graph_stats(graph_id).to_dict()}
    if depth >= 2:
        payload["diagnostics"] = schema_diagnostics(store, graph_id).to_dict()
    if depth >= 3:
        payload["coverage_gaps"] = coverage_gaps(store, graph_id, standard=standard).to_dict()
        payload["duplicate_candidates"] = detect_duplicates(store, graph_id)
    return payload


def run_analysis(store: GraphStore, graph_id: str, preset: str, depth: int,
                 llm: LlmClient, registry: PromptRegistry,
                 user_prompt: Optional[str] = None,
                 model_id: str = "default", temperature: float = 0.0,
                 standard: str = "unknown") -> AnalysisReport:
    if preset not in ANALYSIS_PRESETS:
        raise SchemaViolation(f"unknown preset: {preset}", preset)
    depth = max(1, min(3, depth))
    store.graph(graph_id)

    system_template, user_template, preset_text = registry.analysis_prompts(preset)
    system = render(
        system_template,
        mode_instruction=MODE_INSTRUCTIONS[depth],
        user_prompt=(user_prompt or "").strip(),
        preset_prompt=preset_text.strip(),
    )
    graph_payload = build_graph_payload(store, graph_id, depth, standard=standard)
    user = render(user_template, graph_payload=json.dumps(graph_payload, sort_keys=True))
    response = llm.complete(LlmRequest(model_id=model_id, system=system,
                                       user=user, temperature=temperature))
    return parse_analysis(response.text)
