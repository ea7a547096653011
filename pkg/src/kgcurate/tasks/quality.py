"""Comparison, duplicate, coverage, schema, and provenance tasks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..errors import TooFewEntities, UnknownEntity
from ..fusion.normalize import normalize_entity
from ..store.graph_store import GraphStore
from ..textutil import collapse_ws

# Topic checklists keyed by standard family; "unknown" gets the generic
# disclosure checklist. A topic counts as covered when any triple's
# concatenated text contains one of its keywords (case-insensitive).
TOPIC_CHECKLISTS: dict[str, dict[str, list[str]]] = {
    "tcfd": {
        "governance": ["governance", "board", "oversight", "committee"],
        "strategy": ["strategy", "scenario", "resilience", "transition"],
        "risk management": ["risk"],
        "metrics & targets": ["metric", "target", "emission", "baseline"],
    },
    "ifrs_s2": {
        "governance": ["governance", "board", "oversight", "committee"],
        "strategy": ["strategy", "scenario", "resilience"],
        "risk management": ["risk"],
        "metrics & targets": ["metric", "target", "emission", "intensity"],
        "transition plans": ["transition", "decarbonization", "capital"],
    },
    "gri": {
        "governance": ["governance", "ethics", "anti-corruption", "compliance"],
        "social": ["labor", "safety", "human rights", "training", "community"],
        "environmental": ["energy", "emission", "water", "biodiversity", "waste"],
        "quantitative disclosures": ["percent", "rate", "year", "baseline"],
    },
    "sasb": {
        "metrics": ["metric", "value", "unit", "percent"],
        "targets": ["target", "goal", "deadline", "milestone"],
        "governance": ["governance", "board", "committee", "owner"],
        "risk management": ["risk", "control", "procedure", "policy"],
    },
    "unknown": {
        "governance": ["governance", "board", "oversight"],
        "metrics": ["metric", "target", "value"],
        "risk": ["risk"],
    },
}

GENERIC_SUBJECTS = frozenset({"company", "it", "this", "the company", "organization"})

DUPLICATE_LENGTH_FLOOR = 4


@dataclass
class ComparisonReport:
    entities: list[str]
    fact_counts: dict[str, int]
    shared_predicates: list[str]
    unique_predicates: dict[str, list[str]]

    def to_dict(self) -> dict:
        return {
            "entities": self.entities,
            "fact_counts": self.fact_counts,
            "shared_predicates": self.shared_predicates,
            "unique_predicates": self.unique_predicates,
        }


@dataclass
class GapReport:
    missing_topics: list[str]
    thin_topics: list[str]
    degree_one_entities: list[str]

    def to_dict(self) -> dict:
        return {
            "missing_topics": self.missing_topics,
            "thin_topics": self.thin_topics,
            "degree_one_entities": self.degree_one_entities,
        }


@dataclass
class DiagnosticsReport:
    predicate_variants: list[dict] = field(default_factory=list)
    singleton_predicates: list[str] = field(default_factory=list)
    generic_subjects: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "predicate_variants": self.predicate_variants,
            "singleton_predicates": self.singleton_predicates,
            "generic_subjects": self.generic_subjects,
        }


def compare_entities(store: GraphStore, graph_id: str, entities: list[str]) -> ComparisonReport:
    names = list(dict.fromkeys(entities))
    if not 2 <= len(names) <= 5:
        raise TooFewEntities("comparison takes 2 to 5 distinct entity names")
    nodes = {}
    for name in names:
        node = store.entity_by_name(graph_id, name)
        if node is None:
            raise UnknownEntity(f"no such entity: {name!r}")
        nodes[name] = node

    predicate_sets: dict[str, set[str]] = {}
    fact_counts: dict[str, int] = {}
    for name, node in nodes.items():
        incident = [t for t in store.triples_of_graph(graph_id)
                    if node.id in (t.subject_id, t.object_id)]
        fact_counts[name] = len(incident)
        predicate_sets[name] = {t.predicate for t in incident}

    shared = set.intersection(*predicate_sets.values()) if predicate_sets else set()
    unique = {
        name: sorted(predicates - set.union(*(predicate_sets[o] for o in names if o != name)))
        for name, predicates in predicate_sets.items()
    }
    return ComparisonReport(
        entities=names,
        fact_counts=fact_counts,
        shared_predicates=sorted(shared),
        unique_predicates=unique,
    )


def edit_distance(a: str, b: str) -> int:
    """Plain Levenshtein distance (insert/delete/substitute, unit costs)."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (ca != cb),
            ))
        previous = current
    return previous[-1]


def detect_duplicates(store: GraphStore, graph_id: str,
                      max_edit_distance: int = 2) -> list[dict]:
    names = sorted(e.name for e in store.entities_of_graph(graph_id))
    pairs = []
    for i, name_a in enumerate(names):
        norm_a = normalize_entity(name_a)
        for name_b in names[i + 1:]:
            norm_b = normalize_entity(name_b)
            if norm_a == norm_b:
                pairs.append({"name_a": name_a, "name_b": name_b,
                              "reason": "normalized_equal"})
            elif (len(norm_a) >= DUPLICATE_LENGTH_FLOOR
                  and len(norm_b) >= DUPLICATE_LENGTH_FLOOR
                  and abs(len(norm_a) - len(norm_b)) <= max_edit_distance
                  and edit_distance(norm_a, norm_b) <= max_edit_distance):
                pairs.append({"name_a": name_a, "name_b": name_b,
                              "reason": "edit_distance"})
    return pairs


def coverage_gaps(store: GraphStore, graph_id: str,
                  checklist: Optional[dict[str, list[str]]] = None,
                  standard: str = "unknown") -> GapReport:
    if checklist is None:
        checklist = TOPIC_CHECKLISTS.get(standard, TOPIC_CHECKLISTS["unknown"])
    rows = store.export_edges(graph_id)
    texts = [f"{r['subject']} {r['predicate']} {r['object']}".lower() for r in rows]

    missing = []
    thin = []
    for topic, topic_keywords in checklist.items():
        hits = sum(1 for text in texts
                   if any(kw.lower() in text for kw in topic_keywords))
        if hits == 0:
            missing.append(topic)
        elif hits == 1:
            thin.append(topic)

    degree: dict[str, int] = {}
    for triple in store.triples_of_graph(graph_id):
        for eid in {triple.subject_id, triple.object_id}:
            degree[eid] = degree.get(eid, 0) + 1
    degree_one = sorted(store.entity(eid).name for eid, d in degree.items() if d == 1)
    return GapReport(missing_topics=missing, thin_topics=thin,
                     degree_one_entities=degree_one)


def schema_diagnostics(store: GraphStore, graph_id: str) -> DiagnosticsReport:
    report = DiagnosticsReport()
    triples = store.triples_of_graph(graph_id)

    by_normalized: dict[str, set[str]] = {}
    counts: dict[str, int] = {}
    for triple in triples:
        normalized = collapse_ws(triple.predicate.lower())
        by_normalized.setdefault(normalized, set()).add(triple.predicate)
        counts[triple.predicate] = counts.get(triple.predicate, 0) + 1

    for normalized in sorted(by_normalized):
        variants = by_normalized[normalized]
        if len(variants) >= 2:
            report.predicate_variants.append({"normalized": normalized,
                                              "variants": sorted(variants)})
    report.singleton_predicates = sorted(p for p, c in counts.items() if c == 1)

    for triple in triples:
        view = store.triple_view(triple)
        if normalize_entity(view["subject"]) in GENERIC_SUBJECTS:
            report.generic_subjects.append({
                "triple_id": triple.id,
                "subject": view["subject"],
                "predicate": view["predicate"],
                "object": view["object"],
            })
    return report


def provenance_trace(store: GraphStore, graph_id: str,
                     entity: Optional[str] = None,
                     predicate: Optional[str] = None,
                     document_id: Optional[str] = None,
                     page: Optional[int] = None) -> list[dict]:
    """Conjunctive filter over live triples; each row carries full provenance."""
    out = []
    for triple in store.triples_of_graph(graph_id):
        view = store.triple_view(triple)
        if entity is not None and entity not in (view["subject"], view["object"]):
            continue
        if predicate is not None and triple.predicate != predicate:
            continue
        if document_id is not None and triple.provenance.document_id != document_id:
            continue
        if page is not None and triple.provenance.page != page:
            continue
        out.append({"triple": view, "provenance": view["provenance"]})
    return out
