"""Cross-graph overlap and naming-conflict detection, plus fused previews.

Both operations are pure reads: they group entities by normalized name
across the requested graphs and never touch source-graph state.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import NeedTwoGraphs
from ..store.graph_store import DEFAULT_EDGE_CAP, GraphStore
from .normalize import normalize_entity


@dataclass
class OverlapReport:
    shared_entities: list[dict] = field(default_factory=list)
    naming_conflicts: list[dict] = field(default_factory=list)
    per_graph_unique_counts: dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "shared_entities": self.shared_entities,
            "naming_conflicts": self.naming_conflicts,
            "per_graph_unique_counts": self.per_graph_unique_counts,
        }


@dataclass
class FusedGraph:
    """Read-only union view keyed by normalized entity classes."""

    nodes: list[dict]            # {normalized, members: {graph_id: [names]}}
    edges: list[dict]            # {subject, predicate, object, origin_graph, ...}
    truncated: bool
    summary: dict

    def to_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "edges": self.edges,
            "truncated": self.truncated,
            "summary": self.summary,
        }


def _group_by_normalized(store: GraphStore, graph_ids: list[str]) -> dict[str, dict[str, set[str]]]:
    """normalized name -> graph id -> set of original spellings."""
    groups: dict[str, dict[str, set[str]]] = {}
    for graph_id in graph_ids:
        for entity in store.entities_of_graph(graph_id):
            normalized = normalize_entity(entity.name)
            groups.setdefault(normalized, {}).setdefault(graph_id, set()).add(entity.name)
    return groups


def detect_overlaps(store: GraphStore, graph_ids: list[str]) -> OverlapReport:
    unique_ids = list(dict.fromkeys(graph_ids))
    if len(unique_ids) < 2:
        raise NeedTwoGraphs("overlap detection needs at least two distinct graphs")
    for gid in unique_ids:
        store.graph(gid)

    groups = _group_by_normalized(store, unique_ids)
    report = OverlapReport(per_graph_unique_counts={gid: 0 for gid in unique_ids})
    for normalized in sorted(groups):
        per_graph = groups[normalized]
        if len(per_graph) >= 2:
            variants = {gid: sorted(names) for gid, names in sorted(per_graph.items())}
            report.shared_entities.append({"normalized": normalized,
                                           "variants_per_graph": variants})
            all_spellings = {name for names in per_graph.values() for name in names}
            if len(all_spellings) >= 2:
                report.naming_conflicts.append({"normalized": normalized,
                                                "variants": sorted(all_spellings)})
        else:
            only_graph = next(iter(per_graph))
            report.per_graph_unique_counts[only_graph] += 1
    return report


def build_fused_preview(store: GraphStore, graph_ids: list[str],
                        edge_cap: int = DEFAULT_EDGE_CAP) -> FusedGraph:
    unique_ids = list(dict.fromkeys(graph_ids))
    if len(unique_ids) < 2:
        raise NeedTwoGraphs("fused preview needs at least two distinct graphs")
    for gid in unique_ids:
        store.graph(gid)

    groups = _group_by_normalized(store, unique_ids)
    nodes = []
    merged_classes = 0
    for normalized in sorted(groups):
        members = {gid: sorted(names) for gid, names in sorted(groups[normalized].items())}
        member_count = sum(len(names) for names in members.values())
        if member_count >= 2:
            merged_classes += 1
        nodes.append({"normalized": normalized, "members": members})

    edges = []
    truncated = False
    for gid in unique_ids:
        for triple in store.triples_of_graph(gid):
            view = store.triple_view(triple)
            edges.append({
                "subject": normalize_entity(view["subject"]),
                "predicate": view["predicate"],
                "object": normalize_entity(view["object"]),
                "origin_graph": gid,
                "original_subject": view["subject"],
                "original_object": view["object"],
                "triple_id": triple.id,
            })
            if len(edges) > edge_cap:
                truncated = True
                edges = edges[:edge_cap]
                break
        if truncated:
            break

    return FusedGraph(
        nodes=nodes,
        edges=edges,
        truncated=truncated,
        summary={
            "node_count": len(nodes),
            "edge_count": len(edges),
            "merged_class_count": merged_classes,
        },
    )
