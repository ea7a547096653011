from .eventlog import AuditEntry, EventLog, verify_log
from .graph_store import DEFAULT_EDGE_CAP, GraphStore
from .models import (
    DocumentRecord,
    DocumentState,
    EntityNode,
    GraphInfo,
    GraphStats,
    Judgment,
    PageText,
    Path,
    Provenance,
    QueryFilter,
    Subgraph,
    TripleOrigin,
    TripleRecord,
    TripleStatus,
)

__all__ = [
    "AuditEntry",
    "DEFAULT_EDGE_CAP",
    "DocumentRecord",
    "DocumentState",
    "EntityNode",
    "EventLog",
    "GraphInfo",
    "GraphStats",
    "GraphStore",
    "Judgment",
    "PageText",
    "Path",
    "Provenance",
    "QueryFilter",
    "Subgraph",
    "TripleOrigin",
    "TripleRecord",
    "TripleStatus",
    "verify_log",
]
