"""Question answering and reasoning tasks over a graph.

The retrieval path is fully symbolic (keyword match, neighborhood
union, paths between top matches); an LLM, when supplied, only writes
the prose answer on top of the same subgraph. Everything here is a
read: no task run touches the event log.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..errors import NoEntityMatch
from ..fusion.normalize import normalize_entity
from ..llm.client import LlmClient, LlmRequest
from ..store.graph_store import DEFAULT_EDGE_CAP, GraphStore
from ..store.models import Path, QueryFilter, Subgraph
from .keywords import extract_keywords

MAX_TASK_HOPS = 4
DEFAULT_TOP_MATCHES = 5


@dataclass
class EntityMatch:
    entity: str
    score: int

    def to_dict(self) -> dict:
        return {"entity": self.entity, "score": self.score}


@dataclass
class KgqaResult:
    matched_entities: list[EntityMatch]
    evidence_subgraph: Subgraph
    reasoning_paths: list[Path]
    provenance: list[dict]
    answer: Optional[str] = None
    keywords: list[str] = field(default_factory=list)


def match_entities(store: GraphStore, keywords: list[str], graph_id: str) -> list[EntityMatch]:
    """Score entities against keywords.

    A keyword scores 2 when its normalized form equals the normalized
    entity name, 1 when it is merely a case-insensitive substring;
    per-entity scores sum over keywords. Zero-score entities drop out;
    ties order lexicographically.
    """
    matches = []
    for entity in store.entities_of_graph(graph_id):
        lowered = entity.name.lower()
        normalized = normalize_entity(entity.name)
        score = 0
        for keyword in keywords:
            if normalize_entity(keyword) == normalized:
                score += 2
            elif keyword.lower() in lowered:
                score += 1
        if score > 0:
            matches.append(EntityMatch(entity=entity.name, score=score))
    matches.sort(key=lambda m: (-m.score, m.entity))
    return matches


def bounded_hop(store: GraphStore, graph_id: str, entity: str, hops: int,
                query_filter: Optional[QueryFilter] = None,
                edge_cap: int = DEFAULT_EDGE_CAP) -> Subgraph:
    return store.query_neighborhood(graph_id, entity, min(hops, MAX_TASK_HOPS),
                                    query_filter, edge_cap)


def path_search(store: GraphStore, graph_id: str, source: str, target: str,
                max_hops: int, max_paths: int = 20) -> list[Path]:
    return store.find_paths(graph_id, source, target,
                            min(max_hops, MAX_TASK_HOPS), max_paths)


def _serialize_subgraph_for_prompt(store: GraphStore, subgraph: Subgraph) -> str:
    lines = []
    for edge in subgraph.edges:
        view = store.triple_view(edge)
        lines.append(f"({view['subject']}, {view['predicate']}, {view['object']})")
    return "\n".join(lines)


def kgqa(store: GraphStore, question: str, graph_id: str, hops: int = 2,
         llm: Optional[LlmClient] = None, top_k: int = DEFAULT_TOP_MATCHES,
         model_id: str = "default", edge_cap: int = DEFAULT_EDGE_CAP) -> KgqaResult:
    store.graph(graph_id)
    keywords = extract_keywords(question)
    matches = match_entities(store, keywords, graph_id)[:top_k]
    if not matches:
        raise NoEntityMatch(f"question matched no entity: {question!r}")

    node_ids: dict[str, None] = {}
    edge_ids: dict[str, None] = {}
    nodes = []
    edges = []
    truncated = False
    for match in matches:
        part = bounded_hop(store, graph_id, match.entity, hops, edge_cap=edge_cap)
        truncated = truncated or part.truncated
        for node in part.nodes:
            if node.id not in node_ids:
                node_ids[node.id] = None
                nodes.append(node)
        for edge in part.edges:
            if edge.id not in edge_ids:
                edge_ids[edge.id] = None
                edges.append(edge)

    subgraph = Subgraph(nodes=nodes, edges=edges, truncated=truncated,
                        stats=store._view_stats(nodes, edges))
    paths: list[Path] = []
    if len(matches) >= 2:
        paths = path_search(store, graph_id, matches[0].entity, matches[1].entity,
                            max_hops=hops)

    answer = None
    if llm is not None:
        serialized = _serialize_subgraph_for_prompt(store, subgraph)
        request = LlmRequest(
            model_id=model_id,
            system=("You answer questions strictly from the provided knowledge "
                    "graph triples. If the triples do not answer the question, "
                    "say so. Be concise."),
            user=f"Triples:\n{serialized}\n\nQuestion: {question}",
            temperature=0.0,
        )
        answer = llm.complete(request).text.strip()

    provenance = [store.triple_view(edge)["provenance"] for edge in edges]
    return KgqaResult(
        matched_entities=matches,
        evidence_subgraph=subgraph,
        reasoning_paths=paths,
        provenance=provenance,
        answer=answer,
        keywords=keywords,
    )
