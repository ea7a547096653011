"""Expert rename/merge resolution over one graph.

A MergePlan is a list of actions, applied atomically: validation
covers the whole plan before anything commits, so a bad action means
nothing happens. Renaming onto an existing name coerces to a merge
into it, which is the common manual-resolution move.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import CertifiedImmutable, EmptyName, PlanConflict, UnknownEntity
from ..store.graph_store import GraphStore


@dataclass
class MergeAction:
    kind: str                    # rename | merge
    graph_id: str
    from_names: list[str]
    to: str

    @classmethod
    def from_dict(cls, d: dict) -> "MergeAction":
        raw_from = d.get("from", [])
        from_names = [raw_from] if isinstance(raw_from, str) else list(raw_from)
        return cls(kind=d["kind"], graph_id=d["graph_id"],
                   from_names=from_names, to=d["to"])

    def to_dict(self) -> dict:
        return {"kind": self.kind, "graph_id": self.graph_id,
                "from": self.from_names, "to": self.to}


@dataclass
class MergePlan:
    actions: list[MergeAction]
    author: str
    status: str = "proposed"

    @classmethod
    def from_dict(cls, d: dict) -> "MergePlan":
        return cls(
            actions=[MergeAction.from_dict(a) for a in d.get("actions", [])],
            author=d.get("author", ""),
            status=d.get("status", "proposed"),
        )

    def to_dict(self) -> dict:
        return {"actions": [a.to_dict() for a in self.actions],
                "author": self.author, "status": self.status}


@dataclass
class MergeResult:
    renamed: int
    merged: int
    resulting_stats: dict[str, dict] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"renamed": self.renamed, "merged": self.merged,
                "resulting_stats": self.resulting_stats}


def _validate_plan(store: GraphStore, plan: MergePlan) -> None:
    touched: dict[tuple[str, str], int] = {}
    for idx, action in enumerate(plan.actions):
        if action.kind not in ("rename", "merge"):
            raise PlanConflict(f"unknown action kind: {action.kind}")
        if action.kind == "rename" and len(action.from_names) != 1:
            raise PlanConflict("rename takes exactly one source name")
        if not action.to.strip():
            raise EmptyName("merge target name is empty")
        graph = store.graph(action.graph_id)
        if graph.frozen:
            raise CertifiedImmutable(f"graph {action.graph_id} is certified")
        for name in action.from_names:
            if store.entity_by_name(action.graph_id, name) is None:
                raise UnknownEntity(f"no entity {name!r} in graph {action.graph_id}")
        for name in [*action.from_names, action.to]:
            key = (action.graph_id, name.strip())
            if key in touched and touched[key] != idx:
                raise PlanConflict(f"entity {name!r} is touched by two actions")
            touched[key] = idx


def apply_merge_plan(store: GraphStore, plan: MergePlan, actor: str) -> MergeResult:
    _validate_plan(store, plan)
    by_graph: dict[str, list[MergeAction]] = {}
    for action in plan.actions:
        by_graph.setdefault(action.graph_id, []).append(action)

    result = MergeResult(renamed=0, merged=0)
    applied = MergePlan(actions=plan.actions, author=plan.author, status="applied")
    for graph_id, actions in by_graph.items():
        outcome = store.apply_merge(
            graph_id,
            [{"kind": a.kind, "from": a.from_names, "to": a.to} for a in actions],
            plan_meta=applied.to_dict(),
            actor=actor,
        )
        result.renamed += outcome["renamed"]
        result.merged += outcome["merged"]
        result.resulting_stats[graph_id] = store.graph_stats(graph_id).to_dict()
    return result
