"""Embedded provenance-aware property-graph store.

System-of-record for every knowledge graph: entities, triples with
provenance and soft-delete markers, documents, review judgments, and
certification state. All mutations funnel through a single writer and
are persisted to an append-only hash-chained event log; replaying the
log from empty rebuilds the exact same state.

Entity identity is exact string match on the trimmed name. Fuzzy or
normalized matching belongs to the fusion layer, never here.
"""

from __future__ import annotations

import json
import threading
from collections import deque
from pathlib import Path
from typing import Callable, Iterable, Optional

from ..errors import (
    AlreadyDeleted,
    CertifiedImmutable,
    EmptyField,
    EmptyName,
    InvalidProvenance,
    NotDeleted,
    NotFound,
    UnknownDocument,
    UnknownEntity,
    UnknownGraph,
    WrongState,
)
from ..textutil import collapse_ws, now_iso
from .eventlog import AuditEntry, EventLog, verify_log
from .models import (
    DocumentRecord,
    DocumentState,
    EntityNode,
    GraphInfo,
    GraphStats,
    Judgment,
    Path as GraphPath,
    PageText,
    Provenance,
    QueryFilter,
    Subgraph,
    TripleOrigin,
    TripleRecord,
    TripleStatus,
)

DEFAULT_EDGE_CAP = 500

EVENTS_FILENAME = "events.log"
SNAPSHOT_FILENAME = "snapshot.json"


class GraphStore:
    """Single-writer, multi-reader store over an event log.

    Mutations serialize on an internal lock; read methods copy what
    they return, so results stay consistent while the writer proceeds.
    """

    def __init__(self, data_dir: Optional[Path] = None,
                 clock: Callable[[], str] = now_iso):
        self._lock = threading.RLock()
        self._clock = clock
        self._data_dir = Path(data_dir) if data_dir is not None else None

        self._graphs: dict[str, GraphInfo] = {}
        self._documents: dict[str, DocumentRecord] = {}
        self._entities: dict[str, EntityNode] = {}
        self._name_index: dict[str, dict[str, str]] = {}     # graph -> name -> entity id
        self._triples: dict[str, TripleRecord] = {}
        self._graph_triples: dict[str, list[str]] = {}       # graph -> triple ids, insertion order
        self._incident: dict[str, list[str]] = {}            # entity id -> triple ids
        self._judgments: dict[str, list[Judgment]] = {}      # triple id -> judgments
        self._finalizations: dict[str, dict] = {}            # triple id -> final verdict record
        self._certifications: dict[str, dict] = {}           # document id -> certification record
        self._next_ids: dict[str, int] = {"graph": 1, "document": 1, "entity": 1,
                                          "triple": 1, "judgment": 1}
        self._entries: list[AuditEntry] = []

        log_path = None
        if self._data_dir is not None:
            self._data_dir.mkdir(parents=True, exist_ok=True)
            log_path = self._data_dir / EVENTS_FILENAME
        existing = log_path is not None and log_path.exists()
        self._log = EventLog(log_path)
        if existing:
            self._load()

    # ------------------------------------------------------------------
    # persistence
    # ------------------------------------------------------------------

    def close(self) -> None:
        self._log.close()

    @property
    def event_log_path(self) -> Optional[Path]:
        return self._log.path

    def _snapshot_path(self) -> Optional[Path]:
        if self._data_dir is None:
            return None
        return self._data_dir / SNAPSHOT_FILENAME

    def _load(self) -> None:
        """Load snapshot if present, then replay the log tail."""
        from_seq = 0
        snap = self._snapshot_path()
        if snap is not None and snap.exists():
            self._restore_snapshot(json.loads(snap.read_text(encoding="utf-8")))
            from_seq = self._log.last_seq + 1
        from .eventlog import read_entries
        last_seq, last_digest = self._log.last_seq, self._log.last_digest
        for entry in read_entries(self._log.path, from_seq=from_seq):
            self._apply(entry.action, entry.payload)
            self._entries.append(entry)
            last_seq, last_digest = entry.seq, entry.digest
        self._log.set_position(last_seq, last_digest)

    def save_snapshot(self) -> Path:
        snap = self._snapshot_path()
        if snap is None:
            raise WrongState("store has no data directory")
        with self._lock:
            payload = {
                "v": 1,
                "last_seq": self._log.last_seq,
                "last_digest": self._log.last_digest,
                "next_ids": dict(self._next_ids),
                "graphs": [vars(g).copy() for g in self._graphs.values()],
                "documents": [self._document_to_dict(d) for d in self._documents.values()],
                "entities": [e.to_dict() for e in self._entities.values()],
                "triples": [self._triple_to_dict(t) for t in self._triples.values()],
                "triple_order": {g: list(ids) for g, ids in self._graph_triples.items()},
                "judgments": [j.to_dict() for js in self._judgments.values() for j in js],
                "finalizations": self._finalizations,
                "certifications": self._certifications,
            }
            snap.write_text(json.dumps(payload, sort_keys=True), encoding="utf-8")
        return snap

    def _restore_snapshot(self, payload: dict) -> None:
        self._next_ids = dict(payload["next_ids"])
        for g in payload["graphs"]:
            info = GraphInfo(**g)
            self._graphs[info.id] = info
        for d in payload["documents"]:
            doc = DocumentRecord(
                id=d["id"], graph_id=d["graph_id"], title=d["title"],
                state=DocumentState(d["state"]), standard=d["standard"],
                pages=[PageText(**p) for p in d["pages"]],
                created_by=d["created_by"], created_at=d["created_at"],
                ingest_report=d.get("ingest_report"),
                certified_at=d.get("certified_at"), certified_by=d.get("certified_by"),
            )
            self._documents[doc.id] = doc
        for e in payload["entities"]:
            node = EntityNode(**e)
            self._entities[node.id] = node
            self._name_index.setdefault(node.graph_id, {})[node.name] = node.id
        for t in payload["triples"]:
            rec = self._triple_from_dict(t)
            self._triples[rec.id] = rec
        self._graph_triples = {g: list(ids) for g, ids in payload["triple_order"].items()}
        for ids in self._graph_triples.values():
            for tid in ids:
                rec = self._triples[tid]
                self._incident.setdefault(rec.subject_id, []).append(tid)
                if rec.object_id != rec.subject_id:
                    self._incident.setdefault(rec.object_id, []).append(tid)
        for j in payload["judgments"]:
            judgment = Judgment(
                id=j["id"], triple_id=j["triple_id"], reviewer=j["reviewer"],
                action=j["action"], feedback=j["feedback"], created_at=j["created_at"],
                suggested_triple=j.get("suggested_triple"),
                verdict=j.get("verdict"), confidence=j.get("confidence"),
            )
            self._judgments.setdefault(judgment.triple_id, []).append(judgment)
        self._finalizations = dict(payload["finalizations"])
        self._certifications = dict(payload["certifications"])
        self._log.set_position(payload["last_seq"], payload["last_digest"])

    # ------------------------------------------------------------------
    # event machinery
    # ------------------------------------------------------------------

    def _next_id(self, kind: str, prefix: str) -> str:
        value = self._next_ids[kind]
        self._next_ids[kind] = value + 1
        return f"{prefix}{value}"

    def _commit(self, action: str, actor: str, subject_ref: str, payload: dict,
                fsync: bool = False) -> AuditEntry:
        entry = self._log.append(action, actor, subject_ref, payload,
                                 created_at=self._clock(), fsync=fsync)
        self._entries.append(entry)
        self._apply(action, payload)
        return entry

    def _apply(self, action: str, payload: dict) -> None:
        handler = getattr(self, f"_apply_{action}", None)
        if handler is not None:
            handler(payload)
        # Actions without a handler are audit-only (account lifecycle etc.).

    # --- apply handlers (pure state transitions, no validation) ---------

    def _apply_graph_created(self, p: dict) -> None:
        self._graphs[p["id"]] = GraphInfo(
            id=p["id"], primary_document_id=p.get("primary_document_id"),
            created_at=p["created_at"], created_by=p["created_by"],
        )
        self._graph_triples.setdefault(p["id"], [])
        self._name_index.setdefault(p["id"], {})

    def _apply_document_registered(self, p: dict) -> None:
        doc = DocumentRecord(
            id=p["id"], graph_id=p["graph_id"], title=p["title"],
            state=DocumentState(p["state"]), standard=p["standard"],
            pages=[PageText(**pg) for pg in p["pages"]],
            created_by=p["created_by"], created_at=p["created_at"],
        )
        self._documents[doc.id] = doc
        graph = self._graphs.get(doc.graph_id)
        if graph is not None and graph.primary_document_id is None:
            graph.primary_document_id = doc.id

    def _apply_document_state_set(self, p: dict) -> None:
        doc = self._documents[p["id"]]
        doc.state = DocumentState(p["state"])
        if p.get("standard") is not None:
            doc.standard = p["standard"]

    def _apply_ingest_report_recorded(self, p: dict) -> None:
        self._documents[p["id"]].ingest_report = p["report"]

    def _apply_entity_upserted(self, p: dict) -> None:
        node = EntityNode(id=p["id"], graph_id=p["graph_id"], name=p["name"],
                          created_at=p["created_at"], created_by=p["created_by"])
        self._entities[node.id] = node
        self._name_index.setdefault(node.graph_id, {})[node.name] = node.id
        self._incident.setdefault(node.id, [])

    def _apply_triple_inserted(self, p: dict) -> None:
        rec = TripleRecord(
            id=p["id"], graph_id=p["graph_id"],
            subject_id=p["subject_id"], predicate=p["predicate"], object_id=p["object_id"],
            status=TripleStatus(p["status"]), deleted=False,
            provenance=Provenance.from_dict(p["provenance"]),
            origin=TripleOrigin(p["origin"]),
            created_by=p["created_by"], created_at=p["created_at"],
            last_updated_by=p["created_by"], last_updated_at=p["created_at"],
        )
        self._triples[rec.id] = rec
        self._graph_triples.setdefault(rec.graph_id, []).append(rec.id)
        self._incident.setdefault(rec.subject_id, []).append(rec.id)
        if rec.object_id != rec.subject_id:
            self._incident.setdefault(rec.object_id, []).append(rec.id)

    def _apply_triple_updated(self, p: dict) -> None:
        rec = self._triples[p["id"]]
        after = p["after"]
        if rec.subject_id != after["subject_id"]:
            self._incident[rec.subject_id].remove(rec.id)
            self._incident.setdefault(after["subject_id"], []).append(rec.id)
        if rec.object_id != after["object_id"]:
            if rec.object_id != rec.subject_id:
                self._incident[rec.object_id].remove(rec.id)
            if after["object_id"] != after["subject_id"]:
                self._incident.setdefault(after["object_id"], []).append(rec.id)
        rec.subject_id = after["subject_id"]
        rec.predicate = after["predicate"]
        rec.object_id = after["object_id"]
        rec.last_updated_by = p["actor"]
        rec.last_updated_at = p["at"]

    def _apply_triple_deleted(self, p: dict) -> None:
        rec = self._triples[p["id"]]
        rec.deleted = True
        rec.last_updated_by = p["actor"]
        rec.last_updated_at = p["at"]

    def _apply_triple_restored(self, p: dict) -> None:
        rec = self._triples[p["id"]]
        rec.deleted = False
        rec.last_updated_by = p["actor"]
        rec.last_updated_at = p["at"]

    def _apply_judgment_recorded(self, p: dict) -> None:
        judgment = Judgment(
            id=p["id"], triple_id=p["triple_id"], reviewer=p["reviewer"],
            action=p["action"], feedback=p["feedback"], created_at=p["at"],
            suggested_triple=p.get("suggested_triple"),
            verdict=p.get("verdict"), confidence=p.get("confidence"),
        )
        existing = self._judgments.setdefault(p["triple_id"], [])
        if p.get("replaced"):
            existing[:] = [j for j in existing if j.reviewer != judgment.reviewer]
        existing.append(judgment)

    def _apply_triple_finalized(self, p: dict) -> None:
        rec = self._triples[p["triple_id"]]
        if p["final"] == "certify":
            rec.status = TripleStatus.CERTIFIED
        else:
            rec.status = TripleStatus.REJECTED
            rec.deleted = True
        rec.last_updated_by = p["actor"]
        rec.last_updated_at = p["at"]
        self._finalizations[p["triple_id"]] = {
            "final": p["final"], "note": p["note"], "by": p["actor"], "at": p["at"],
        }

    def _apply_document_certified(self, p: dict) -> None:
        for tid in p["promoted_triple_ids"]:
            self._triples[tid].status = TripleStatus.CERTIFIED
        doc = self._documents[p["document_id"]]
        doc.state = DocumentState.CERTIFIED
        doc.certified_at = p["at"]
        doc.certified_by = p["actor"]
        self._graphs[doc.graph_id].frozen = True
        self._certifications[doc.id] = {
            "document_id": doc.id, "certified_at": p["at"],
            "certified_by": p["actor"], "triple_count": p["triple_count"],
        }

    def _apply_merge_plan_applied(self, p: dict) -> None:
        graph_id = p["graph_id"]
        for effect in p["effects"]:
            kind = effect["kind"]
            if kind == "create_entity":
                self._apply_entity_upserted({
                    "id": effect["entity_id"], "graph_id": graph_id,
                    "name": effect["name"],
                    "created_at": p["at"], "created_by": p["actor"],
                })
            elif kind == "rename_entity":
                node = self._entities[effect["entity_id"]]
                del self._name_index[graph_id][node.name]
                node.name = effect["new_name"]
                self._name_index[graph_id][node.name] = node.id
            elif kind == "repoint_triple":
                rec = self._triples[effect["triple_id"]]
                for old in {rec.subject_id, rec.object_id}:
                    if rec.id in self._incident.get(old, []):
                        self._incident[old].remove(rec.id)
                rec.subject_id = effect["subject_id"]
                rec.object_id = effect["object_id"]
                rec.last_updated_by = p["actor"]
                rec.last_updated_at = p["at"]
                for new in {rec.subject_id, rec.object_id}:
                    bucket = self._incident.setdefault(new, [])
                    if rec.id not in bucket:
                        bucket.append(rec.id)
            elif kind == "drop_triple":
                rec = self._triples.pop(effect["triple_id"])
                self._graph_triples[graph_id].remove(rec.id)
                for eid in {rec.subject_id, rec.object_id}:
                    if rec.id in self._incident.get(eid, []):
                        self._incident[eid].remove(rec.id)
                self._judgments.pop(rec.id, None)
                self._finalizations.pop(rec.id, None)
            elif kind == "drop_entity":
                node = self._entities.pop(effect["entity_id"])
                self._name_index[graph_id].pop(node.name, None)
                self._incident.pop(node.id, None)

    # ------------------------------------------------------------------
    # lookups
    # ------------------------------------------------------------------

    def _graph_or_raise(self, graph_id: str) -> GraphInfo:
        graph = self._graphs.get(graph_id)
        if graph is None:
            raise UnknownGraph(f"no such graph: {graph_id}")
        return graph

    def _require_mutable(self, graph_id: str) -> GraphInfo:
        graph = self._graph_or_raise(graph_id)
        if graph.frozen:
            raise CertifiedImmutable(f"graph {graph_id} is certified and frozen")
        return graph

    def graph(self, graph_id: str) -> GraphInfo:
        with self._lock:
            return self._graph_or_raise(graph_id)

    def graphs(self) -> list[GraphInfo]:
        with self._lock:
            return list(self._graphs.values())

    def document(self, document_id: str) -> DocumentRecord:
        with self._lock:
            doc = self._documents.get(document_id)
            if doc is None:
                raise UnknownDocument(f"no such document: {document_id}")
            return doc

    def documents(self) -> list[DocumentRecord]:
        with self._lock:
            return list(self._documents.values())

    def certification(self, document_id: str) -> Optional[dict]:
        with self._lock:
            record = self._certifications.get(document_id)
            return dict(record) if record else None

    def entity(self, entity_id: str) -> EntityNode:
        with self._lock:
            node = self._entities.get(entity_id)
            if node is None:
                raise UnknownEntity(f"no such entity: {entity_id}")
            return node

    def entity_by_name(self, graph_id: str, name: str) -> Optional[EntityNode]:
        with self._lock:
            self._graph_or_raise(graph_id)
            eid = self._name_index.get(graph_id, {}).get(name.strip())
            return self._entities[eid] if eid else None

    def entities_of_graph(self, graph_id: str) -> list[EntityNode]:
        with self._lock:
            self._graph_or_raise(graph_id)
            index = self._name_index.get(graph_id, {})
            return [self._entities[eid] for eid in index.values()]

    def search_entities(self, graph_id: str, needle: str) -> list[EntityNode]:
        """Case-insensitive substring lookup over entity names."""
        lowered = needle.lower()
        with self._lock:
            return sorted(
                (e for e in self.entities_of_graph(graph_id) if lowered in e.name.lower()),
                key=lambda e: e.name,
            )

    def get_triple(self, triple_id: str) -> TripleRecord:
        with self._lock:
            rec = self._triples.get(triple_id)
            if rec is None:
                raise NotFound(f"no such triple: {triple_id}")
            return rec.copy()

    def triples_of_graph(self, graph_id: str, include_deleted: bool = False) -> list[TripleRecord]:
        with self._lock:
            self._graph_or_raise(graph_id)
            out = []
            for tid in self._graph_triples.get(graph_id, []):
                rec = self._triples[tid]
                if rec.deleted and not include_deleted:
                    continue
                out.append(rec.copy())
            return out

    def triples_of_document(self, document_id: str, include_deleted: bool = False) -> list[TripleRecord]:
        doc = self.document(document_id)
        with self._lock:
            out = []
            for tid in self._graph_triples.get(doc.graph_id, []):
                rec = self._triples[tid]
                if rec.provenance.document_id != document_id:
                    continue
                if rec.deleted and not include_deleted:
                    continue
                out.append(rec.copy())
            return out

    def triple_view(self, triple: TripleRecord) -> dict:
        """Serialize a triple with endpoint names resolved."""
        with self._lock:
            return {
                "id": triple.id,
                "graph_id": triple.graph_id,
                "subject": self._entities[triple.subject_id].name,
                "predicate": triple.predicate,
                "object": self._entities[triple.object_id].name,
                "status": triple.status.value,
                "deleted": triple.deleted,
                "origin": triple.origin.value,
                "provenance": triple.provenance.to_dict(),
                "created_by": triple.created_by,
                "created_at": triple.created_at,
                "last_updated_by": triple.last_updated_by,
                "last_updated_at": triple.last_updated_at,
            }

    # ------------------------------------------------------------------
    # mutations
    # ------------------------------------------------------------------

    def create_graph(self, actor: str) -> GraphInfo:
        with self._lock:
            graph_id = self._next_id("graph", "g")
            self._commit("graph_created", actor, graph_id, {
                "id": graph_id, "primary_document_id": None,
                "created_at": self._clock(), "created_by": actor,
            })
            return self._graphs[graph_id]

    def register_document(self, title: str, pages: list[PageText], actor: str) -> DocumentRecord:
        if not title.strip():
            raise EmptyField("document title is empty")
        with self._lock:
            graph = self.create_graph(actor)
            doc_id = self._next_id("document", "d")
            self._commit("document_registered", actor, doc_id, {
                "id": doc_id, "graph_id": graph.id, "title": title,
                "state": DocumentState.INGESTING.value, "standard": "unknown",
                "pages": [p.to_dict() for p in pages],
                "created_by": actor, "created_at": self._clock(),
            })
            return self._documents[doc_id]

    def set_document_state(self, document_id: str, state: DocumentState, actor: str,
                           standard: Optional[str] = None) -> DocumentRecord:
        with self._lock:
            self.document(document_id)
            self._commit("document_state_set", actor, document_id, {
                "id": document_id, "state": state.value, "standard": standard,
            })
            return self._documents[document_id]

    def record_ingest_report(self, document_id: str, report: dict, actor: str) -> None:
        with self._lock:
            self.document(document_id)
            self._commit("ingest_report_recorded", actor, document_id,
                         {"id": document_id, "report": report})

    def upsert_entity(self, graph_id: str, name: str, actor: str) -> EntityNode:
        cleaned = name.strip()
        if not cleaned:
            raise EmptyName("entity name is empty")
        with self._lock:
            self._require_mutable(graph_id)
            existing = self._name_index.get(graph_id, {}).get(cleaned)
            if existing is not None:
                return self._entities[existing]
            entity_id = self._next_id("entity", "e")
            self._commit("entity_upserted", actor, entity_id, {
                "id": entity_id, "graph_id": graph_id, "name": cleaned,
                "created_at": self._clock(), "created_by": actor,
            })
            return self._entities[entity_id]

    def _validate_provenance(self, provenance: Provenance) -> None:
        doc = self._documents.get(provenance.document_id)
        if doc is None:
            raise UnknownDocument(f"no such document: {provenance.document_id}")
        if provenance.evidence_sentence is not None:
            if provenance.page is None:
                raise InvalidProvenance("evidence sentence requires a page number")
            page_text = doc.page_text(provenance.page)
            if page_text is None:
                raise InvalidProvenance(f"document {doc.id} has no page {provenance.page}")
            if collapse_ws(provenance.evidence_sentence) not in collapse_ws(page_text):
                raise InvalidProvenance("evidence sentence is not a substring of the page text")

    def insert_triple(self, graph_id: str, subject: str, predicate: str, obj: str,
                      provenance: Provenance, actor: str,
                      origin: TripleOrigin = TripleOrigin.LLM_EXTRACTION,
                      ) -> tuple[TripleRecord, bool]:
        """Insert a Draft triple, upserting both endpoint entities.

        Returns (record, created). An identical non-deleted
        (subject, predicate, object) for the same document collapses
        onto the existing record, keeping the first provenance.
        """
        subject, predicate, obj = subject.strip(), collapse_ws(predicate), obj.strip()
        if not subject or not predicate or not obj:
            raise EmptyField("triple fields must be non-empty")
        with self._lock:
            self._require_mutable(graph_id)
            self._validate_provenance(provenance)
            sub_id = self._name_index.get(graph_id, {}).get(subject)
            obj_id = self._name_index.get(graph_id, {}).get(obj)
            if sub_id is not None and obj_id is not None:
                for tid in self._graph_triples.get(graph_id, []):
                    rec = self._triples[tid]
                    if (not rec.deleted
                            and rec.subject_id == sub_id
                            and rec.object_id == obj_id
                            and rec.predicate == predicate
                            and rec.provenance.document_id == provenance.document_id):
                        return rec.copy(), False
            subject_node = self.upsert_entity(graph_id, subject, actor)
            object_node = self.upsert_entity(graph_id, obj, actor)
            triple_id = self._next_id("triple", "t")
            self._commit("triple_inserted", actor, triple_id, {
                "id": triple_id, "graph_id": graph_id,
                "subject_id": subject_node.id, "predicate": predicate,
                "object_id": object_node.id,
                "status": TripleStatus.DRAFT.value,
                "origin": origin.value,
                "provenance": provenance.to_dict(),
                "created_by": actor, "created_at": self._clock(),
            })
            return self._triples[triple_id].copy(), True

    def update_triple(self, graph_id: str, triple_id: str, patch: dict, actor: str) -> TripleRecord:
        with self._lock:
            self._require_mutable(graph_id)
            rec = self._triples.get(triple_id)
            if rec is None or rec.graph_id != graph_id:
                raise NotFound(f"no such triple: {triple_id}")
            if rec.status is TripleStatus.CERTIFIED:
                raise CertifiedImmutable(f"triple {triple_id} is certified")
            unknown = set(patch) - {"subject", "predicate", "object"}
            if unknown:
                raise EmptyField(f"unknown patch fields: {sorted(unknown)}")

            before = {
                "subject": self._entities[rec.subject_id].name,
                "predicate": rec.predicate,
                "object": self._entities[rec.object_id].name,
            }
            target = dict(before)
            for key in ("subject", "predicate", "object"):
                if key in patch:
                    value = collapse_ws(str(patch[key]))
                    if not value:
                        raise EmptyField(f"patch field {key} is empty")
                    target[key] = value
            if target == before:
                return rec.copy()

            subject_node = self.upsert_entity(graph_id, target["subject"], actor)
            object_node = self.upsert_entity(graph_id, target["object"], actor)
            self._commit("triple_updated", actor, triple_id, {
                "id": triple_id, "graph_id": graph_id,
                "before": before,
                "after": {
                    "subject_id": subject_node.id,
                    "predicate": target["predicate"],
                    "object_id": object_node.id,
                    "subject": target["subject"],
                    "object": target["object"],
                },
                "actor": actor, "at": self._clock(),
            })
            return self._triples[triple_id].copy()

    def soft_delete_triple(self, graph_id: str, triple_id: str, actor: str) -> TripleRecord:
        with self._lock:
            self._require_mutable(graph_id)
            rec = self._triples.get(triple_id)
            if rec is None or rec.graph_id != graph_id:
                raise NotFound(f"no such triple: {triple_id}")
            if rec.deleted:
                raise AlreadyDeleted(f"triple {triple_id} is already deleted")
            self._commit("triple_deleted", actor, triple_id,
                         {"id": triple_id, "graph_id": graph_id,
                          "actor": actor, "at": self._clock()})
            return self._triples[triple_id].copy()

    def restore_triple(self, graph_id: str, triple_id: str, actor: str) -> TripleRecord:
        with self._lock:
            self._require_mutable(graph_id)
            rec = self._triples.get(triple_id)
            if rec is None or rec.graph_id != graph_id:
                raise NotFound(f"no such triple: {triple_id}")
            if not rec.deleted:
                raise NotDeleted(f"triple {triple_id} is not deleted")
            self._commit("triple_restored", actor, triple_id,
                         {"id": triple_id, "graph_id": graph_id,
                          "actor": actor, "at": self._clock()})
            return self._triples[triple_id].copy()

    def record_judgment(self, triple_id: str, reviewer: str, action: str, feedback: str,
                        suggested_triple: Optional[dict] = None,
                        verdict: Optional[str] = None,
                        confidence: Optional[float] = None,
                        actor: Optional[str] = None) -> tuple[Judgment, bool]:
        with self._lock:
            if triple_id not in self._triples:
                raise NotFound(f"no such triple: {triple_id}")
            replaced = any(
                j.reviewer == reviewer
                for j in self._judgments.get(triple_id, [])
            ) and reviewer != Judgment.VERIFIER_REVIEWER
            judgment_id = self._next_id("judgment", "j")
            self._commit("judgment_recorded", actor or reviewer, triple_id, {
                "id": judgment_id, "triple_id": triple_id, "reviewer": reviewer,
                "action": action, "feedback": feedback,
                "suggested_triple": suggested_triple,
                "verdict": verdict, "confidence": confidence,
                "replaced": replaced, "at": self._clock(),
            })
            stored = self._judgments[triple_id][-1]
            return stored, replaced

    def judgments_for(self, triple_id: str) -> list[Judgment]:
        with self._lock:
            if triple_id not in self._triples:
                raise NotFound(f"no such triple: {triple_id}")
            return list(self._judgments.get(triple_id, []))

    def finalization_for(self, triple_id: str) -> Optional[dict]:
        with self._lock:
            record = self._finalizations.get(triple_id)
            return dict(record) if record else None

    def finalize_triple(self, triple_id: str, final: str, note: str, actor: str) -> TripleRecord:
        if final not in ("certify", "reject"):
            raise WrongState(f"invalid final verdict: {final}")
        with self._lock:
            rec = self._triples.get(triple_id)
            if rec is None:
                raise NotFound(f"no such triple: {triple_id}")
            if final == "certify" and rec.deleted:
                raise WrongState("cannot certify a deleted triple")
            self._commit("triple_finalized", actor, triple_id, {
                "triple_id": triple_id, "final": final, "note": note,
                "actor": actor, "at": self._clock(),
            })
            return self._triples[triple_id].copy()

    def certify_document(self, document_id: str, promoted_triple_ids: list[str],
                         triple_count: int, actor: str) -> dict:
        with self._lock:
            doc = self.document(document_id)
            self._commit("document_certified", actor, document_id, {
                "document_id": document_id, "graph_id": doc.graph_id,
                "promoted_triple_ids": promoted_triple_ids,
                "triple_count": triple_count,
                "actor": actor, "at": self._clock(),
            }, fsync=True)
            return dict(self._certifications[document_id])

    def apply_merge(self, graph_id: str, actions: list[dict], plan_meta: dict,
                    actor: str) -> dict:
        """Atomically execute validated rename/merge actions.

        Each action is {"kind": "rename"|"merge", "from": [names], "to": name};
        the caller has already run plan-level validation. Rename onto an
        existing name coerces to merge. Exact duplicates created by
        repointing collapse onto the earliest record, and emptied
        entities disappear. Everything lands in one event so replay and
        rollback semantics stay atomic.
        """
        with self._lock:
            self._require_mutable(graph_id)
            sim_names = dict(self._name_index.get(graph_id, {}))
            effects: list[dict] = []
            alias: dict[str, str] = {}
            renamed = 0
            merged = 0

            for action in actions:
                to_name = action["to"].strip()
                if not to_name:
                    raise EmptyName("merge target name is empty")
                from_names = [n.strip() for n in action["from"]]
                if action["kind"] == "rename":
                    (from_name,) = from_names
                    if from_name == to_name:
                        continue
                    from_id = sim_names[from_name]
                    if to_name not in sim_names:
                        effects.append({"kind": "rename_entity", "entity_id": from_id,
                                        "new_name": to_name})
                        del sim_names[from_name]
                        sim_names[to_name] = from_id
                        renamed += 1
                        continue
                    # Target exists: documented coercion to merge.
                to_id = sim_names.get(to_name)
                if to_id is None:
                    to_id = self._next_id("entity", "e")
                    effects.append({"kind": "create_entity", "entity_id": to_id,
                                    "name": to_name})
                    sim_names[to_name] = to_id
                for from_name in from_names:
                    from_id = sim_names.get(from_name)
                    if from_id is None or from_id == to_id:
                        continue
                    alias[from_id] = to_id
                    del sim_names[from_name]
                    merged += 1

            # Repoint every triple whose endpoints alias away, then collapse
            # exact duplicates among the live records.
            seen: dict[tuple, str] = {}
            for tid in list(self._graph_triples.get(graph_id, [])):
                rec = self._triples[tid]
                new_sub = alias.get(rec.subject_id, rec.subject_id)
                new_obj = alias.get(rec.object_id, rec.object_id)
                if new_sub != rec.subject_id or new_obj != rec.object_id:
                    effects.append({"kind": "repoint_triple", "triple_id": tid,
                                    "subject_id": new_sub, "object_id": new_obj})
                if rec.deleted:
                    continue
                key = (new_sub, rec.predicate, new_obj, rec.provenance.document_id)
                if key in seen:
                    effects.append({"kind": "drop_triple", "triple_id": tid})
                else:
                    seen[key] = tid
            for from_id in alias:
                effects.append({"kind": "drop_entity", "entity_id": from_id})

            self._commit("merge_plan_applied", actor, graph_id, {
                "graph_id": graph_id, "plan": plan_meta, "effects": effects,
                "actor": actor, "at": self._clock(),
            })
            return {"renamed": renamed, "merged": merged}

    def record_audit_event(self, action: str, actor: str, subject_ref: str,
                           payload: dict) -> AuditEntry:
        """Append an audit-only event (no state transition)."""
        with self._lock:
            return self._commit(action, actor, subject_ref, payload)

    # ------------------------------------------------------------------
    # queries
    # ------------------------------------------------------------------

    def query_neighborhood(self, graph_id: str, entity_name: str, hops: int,
                           query_filter: Optional[QueryFilter] = None,
                           edge_cap: int = DEFAULT_EDGE_CAP) -> Subgraph:
        """Undirected BFS out to `hops`, then the induced edge set.

        Qualifying edges come back in insertion order; if more than
        `edge_cap` qualify, the list is cut there and truncated=True.
        """
        query_filter = query_filter or QueryFilter()
        with self._lock:
            self._graph_or_raise(graph_id)
            start = self.entity_by_name(graph_id, entity_name)
            if start is None:
                raise UnknownEntity(f"no such entity: {entity_name!r}")

            depth = {start.id: 0}
            order = [start.id]
            queue = deque([start.id])
            while queue:
                current = queue.popleft()
                if depth[current] >= hops:
                    continue
                for tid in self._incident.get(current, []):
                    rec = self._triples[tid]
                    if not query_filter.matches(rec):
                        continue
                    neighbor = rec.object_id if rec.subject_id == current else rec.subject_id
                    if neighbor not in depth:
                        depth[neighbor] = depth[current] + 1
                        order.append(neighbor)
                        queue.append(neighbor)

            node_ids = set(depth)
            qualifying = [
                self._triples[tid]
                for tid in self._graph_triples.get(graph_id, [])
                if (self._triples[tid].subject_id in node_ids
                    and self._triples[tid].object_id in node_ids
                    and query_filter.matches(self._triples[tid]))
            ]
            truncated = len(qualifying) > edge_cap
            edges = [rec.copy() for rec in qualifying[:edge_cap]]
            nodes = [self._entities[eid] for eid in order]
            return Subgraph(nodes=nodes, edges=edges, truncated=truncated,
                            stats=self._view_stats(nodes, edges))

    def _view_stats(self, nodes: list[EntityNode], edges: list[TripleRecord]) -> GraphStats:
        live = [e for e in edges if not e.deleted]
        histogram: dict[str, int] = {}
        for rec in live:
            histogram[rec.predicate] = histogram.get(rec.predicate, 0) + 1
        return GraphStats(
            node_count=len(nodes),
            edge_count=len(live),
            deleted_count=sum(1 for e in edges if e.deleted),
            predicate_histogram=histogram,
        )

    def find_paths(self, graph_id: str, source: str, target: str,
                   max_hops: int, max_paths: int) -> list[GraphPath]:
        """All simple undirected paths up to max_hops edges.

        Shortest first; ties break lexicographically on the node-name
        sequence, then on edge insertion order. Source equal to target
        yields no paths.
        """
        with self._lock:
            self._graph_or_raise(graph_id)
            src = self.entity_by_name(graph_id, source)
            dst = self.entity_by_name(graph_id, target)
            if src is None:
                raise UnknownEntity(f"no such entity: {source!r}")
            if dst is None:
                raise UnknownEntity(f"no such entity: {target!r}")
            if src.id == dst.id:
                return []

            insertion_rank = {tid: i for i, tid in enumerate(self._graph_triples.get(graph_id, []))}
            found: list[tuple] = []

            def walk(current: str, node_trail: list[str], edge_trail: list[str]) -> None:
                if len(edge_trail) >= max_hops:
                    return
                for tid in self._incident.get(current, []):
                    rec = self._triples[tid]
                    if rec.deleted:
                        continue
                    neighbor = rec.object_id if rec.subject_id == current else rec.subject_id
                    if neighbor in node_trail:
                        continue
                    if neighbor == dst.id:
                        found.append((node_trail + [neighbor], edge_trail + [tid]))
                        continue
                    walk(neighbor, node_trail + [neighbor], edge_trail + [tid])

            walk(src.id, [src.id], [])

            def sort_key(item: tuple) -> tuple:
                node_ids, edge_ids = item
                names = tuple(self._entities[nid].name for nid in node_ids)
                ranks = tuple(insertion_rank[tid] for tid in edge_ids)
                return (len(edge_ids), names, ranks)

            found.sort(key=sort_key)
            paths = []
            for node_ids, edge_ids in found[:max_paths]:
                paths.append(GraphPath(
                    nodes=[self._entities[nid] for nid in node_ids],
                    edges=[self._triples[tid].copy() for tid in edge_ids],
                ))
            return paths

    def graph_stats(self, graph_id: str) -> GraphStats:
        with self._lock:
            self._graph_or_raise(graph_id)
            histogram: dict[str, int] = {}
            edge_count = 0
            deleted_count = 0
            for tid in self._graph_triples.get(graph_id, []):
                rec = self._triples[tid]
                if rec.deleted:
                    deleted_count += 1
                    continue
                edge_count += 1
                histogram[rec.predicate] = histogram.get(rec.predicate, 0) + 1
            return GraphStats(
                node_count=len(self._name_index.get(graph_id, {})),
                edge_count=edge_count,
                deleted_count=deleted_count,
                predicate_histogram=histogram,
            )

    def export_edges(self, graph_id: str, query_filter: Optional[QueryFilter] = None) -> list[dict]:
        """Flat edge rows in insertion order, same filter semantics as queries."""
        query_filter = query_filter or QueryFilter()
        with self._lock:
            self._graph_or_raise(graph_id)
            rows = []
            for tid in self._graph_triples.get(graph_id, []):
                rec = self._triples[tid]
                if not query_filter.matches(rec):
                    continue
                rows.append({
                    "subject": self._entities[rec.subject_id].name,
                    "predicate": rec.predicate,
                    "object": self._entities[rec.object_id].name,
                    "document_id": rec.provenance.document_id,
                    "page": rec.provenance.page,
                    "status": rec.status.value,
                })
            return rows

    # ------------------------------------------------------------------
    # audit access
    # ------------------------------------------------------------------

    def audit_entries(self, from_seq: int = 0,
                      document_id: Optional[str] = None) -> list[AuditEntry]:
        with self._lock:
            graph_id = None
            if document_id is not None:
                graph_id = self.document(document_id).graph_id
            out = []
            for entry in self._entries:
                if entry.seq < from_seq:
                    continue
                if document_id is not None:
                    payload = entry.payload
                    related = (
                        entry.subject_ref == document_id
                        or payload.get("document_id") == document_id
                        or payload.get("graph_id") == graph_id
                        or payload.get("id") == document_id
                        or (payload.get("provenance") or {}).get("document_id") == document_id
                        or self._triples.get(entry.subject_ref) is not None
                        and self._triples[entry.subject_ref].graph_id == graph_id
                    )
                    if not related:
                        continue
                out.append(entry)
            return out

    def verify_audit(self, from_seq: int = 0, to_seq: Optional[int] = None) -> dict:
        if self._log.path is None:
            return self._verify_in_memory(from_seq, to_seq)
        return verify_log(self._log.path, from_seq=from_seq, to_seq=to_seq)

    def _verify_in_memory(self, from_seq: int, to_seq: Optional[int]) -> dict:
        from .eventlog import GENESIS_DIGEST, digest_of
        prev = GENESIS_DIGEST
        for entry in self._entries:
            ok = (entry.prev_digest == prev
                  and entry.payload_digest == digest_of(entry.payload)
                  and entry.digest == digest_of(entry.body()))
            if not ok and entry.seq >= from_seq and (to_seq is None or entry.seq <= to_seq):
                return {"ok": False, "first_bad_seq": entry.seq}
            prev = entry.digest
        return {"ok": True, "entries": len(self._entries)}

    def _document_to_dict(self, doc: DocumentRecord) -> dict:
        return {
            "id": doc.id, "graph_id": doc.graph_id, "title": doc.title,
            "state": doc.state.value, "standard": doc.standard,
            "pages": [p.to_dict() for p in doc.pages],
            "created_by": doc.created_by, "created_at": doc.created_at,
            "ingest_report": doc.ingest_report,
            "certified_at": doc.certified_at, "certified_by": doc.certified_by,
        }

    def _triple_to_dict(self, rec: TripleRecord) -> dict:
        return {
            "id": rec.id, "graph_id": rec.graph_id,
            "subject_id": rec.subject_id, "predicate": rec.predicate,
            "object_id": rec.object_id,
            "status": rec.status.value, "deleted": rec.deleted,
            "provenance": rec.provenance.to_dict(), "origin": rec.origin.value,
            "created_by": rec.created_by, "created_at": rec.created_at,
            "last_updated_by": rec.last_updated_by, "last_updated_at": rec.last_updated_at,
        }

    @staticmethod
    def _triple_from_dict(d: dict) -> TripleRecord:
        return TripleRecord(
            id=d["id"], graph_id=d["graph_id"],
            subject_id=d["subject_id"], predicate=d["predicate"], object_id=d["object_id"],
            status=TripleStatus(d["status"]), deleted=d["deleted"],
            provenance=Provenance.from_dict(d["provenance"]),
            origin=TripleOrigin(d["origin"]),
            created_by=d["created_by"], created_at=d["created_at"],
            last_updated_by=d["last_updated_by"], last_updated_at=d["last_updated_at"],
        )
