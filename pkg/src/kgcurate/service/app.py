"""HTTP/JSON service exposing every operation under role enforcement.

Every handler resolves the bearer session and checks the permission
matrix before touching any module. Domain errors map onto stable
machine codes via one exception handler; failure bodies are always
{"code", "message", optional "detail"}.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Optional

from fastapi import Body, FastAPI, Query, Request, Response
from fastapi.responses import JSONResponse

from ..errors import EmptyField, KgError, NotFound, ReplayMiss
from ..fusion.merge import MergePlan, apply_merge_plan
from ..fusion.overlap import build_fused_preview, detect_overlaps
from ..governance.accounts import Session
from ..governance.rbac import Action, Role, require
from ..governance.review import (
    aggregate_judgments,
    certify_document,
    meta_finalize_triple,
    readiness,
    submit_judgment,
)
from ..governance.verifier import run_verifier
from ..ingest.pipeline import IntakeDocument
from ..store.models import (
    DocumentRecord,
    DocumentState,
    Path as GraphPath,
    Provenance,
    QueryFilter,
    Subgraph,
    TripleOrigin,
)
from ..tasks.analytics import run_analysis
from ..tasks.qa import bounded_hop, kgqa, path_search
from ..tasks.quality import (
    compare_entities,
    coverage_gaps,
    detect_duplicates,
    provenance_trace,
    schema_diagnostics,
)
from .hub import Hub

_STATE_ORDER = {state: rank for rank, state in enumerate(
    (DocumentState.INGESTING, DocumentState.DRAFT,
     DocumentState.UNDER_REVIEW, DocumentState.CERTIFIED))}


def _session(hub: Hub, request: Request) -> Session:
    header = request.headers.get("authorization", "")
    token = header.removeprefix("Bearer ").strip() if header.startswith("Bearer ") else None
    return hub.session_from_token(token)


def _subgraph_json(hub: Hub, subgraph: Subgraph) -> dict:
    return {
        "nodes": [{"id": n.id, "name": n.name} for n in subgraph.nodes],
        "edges": [hub.store.triple_view(e) for e in subgraph.edges],
        "truncated": subgraph.truncated,
        "stats": subgraph.stats.to_dict(),
    }


def _path_json(hub: Hub, path: GraphPath) -> dict:
    return {
        "nodes": [n.name for n in path.nodes],
        "edges": [hub.store.triple_view(e) for e in path.edges],
        "length": path.length,
    }


def _document_json(hub: Hub, document: DocumentRecord) -> dict:
    stats = hub.store.graph_stats(document.graph_id)
    return {
        "id": document.id,
        "graph_id": document.graph_id,
        "title": document.title,
        "standard": document.standard,
        "state": document.state.value,
        "created_by": document.created_by,
        "created_at": document.created_at,
        "certified_at": document.certified_at,
        "certified_by": document.certified_by,
        "page_count": len(document.pages),
        "node_count": stats.node_count,
        "edge_count": stats.edge_count,
        "deleted_count": stats.deleted_count,
    }


def _parse_filter(predicates: Optional[str], document_ids: Optional[str],
                  include_deleted: bool) -> QueryFilter:
    return QueryFilter(
        predicates=set(predicates.split(",")) if predicates else None,
        document_ids=set(document_ids.split(",")) if document_ids else None,
        include_deleted=include_deleted,
    )


def create_app(hub: Hub) -> FastAPI:
    app = FastAPI(title="kgcurate", version="0.1.0", docs_url=None, redoc_url=None)
    app.state.hub = hub

    @app.exception_handler(KgError)
    async def _domain_error(_request: Request, exc: KgError) -> JSONResponse:
        return JSONResponse(status_code=exc.http_status, content=exc.to_api())

    @app.exception_handler(ReplayMiss)
    async def _replay_miss(_request: Request, exc: ReplayMiss) -> JSONResponse:
        return JSONResponse(status_code=500,
                            content={"code": "replay_miss", "message": str(exc)})

    # --- auth ----------------------------------------------------------

    @app.post("/auth/login")
    def login(payload: dict = Body(...)) -> dict:
        session = hub.accounts.authenticate(str(payload.get("username", "")),
                                            str(payload.get("password", "")))
        return _session_json(session)

    @app.post("/auth/guest")
    def guest() -> dict:
        return _session_json(hub.accounts.guest_session())

    @app.post("/auth/reset")
    def redeem_reset(payload: dict = Body(...)) -> dict:
        account = hub.accounts.redeem_reset_token(str(payload.get("secret", "")),
                                                  str(payload.get("new_password", "")))
        hub.store.record_audit_event("reset_token_redeemed", account.username,
                                     account.id, {"account_id": account.id})
        return {"ok": True}

    def _session_json(session: Session) -> dict:
        return {
            "token": session.token,
            "username": session.username,
            "role": session.role.value,
            "expires_at": session.expires_at.isoformat(),
        }

    @app.get("/health")
    def health() -> dict:
        return {"ok": True}

    # --- catalog and documents -------------------------------------------

    @app.get("/catalog")
    def catalog(request: Request, sort: str = "date", order: str = "asc") -> dict:
        session = _session(hub, request)
        require(session.role, Action.READ)
        rows = [_document_json(hub, d) for d in hub.store.documents()]
        keys = {
            "name": lambda r: r["title"].lower(),
            "status": lambda r: _STATE_ORDER[DocumentState(r["state"])],
            "date": lambda r: r["created_at"],
        }
        if sort not in keys:
            raise EmptyField(f"unknown sort key: {sort}")
        rows.sort(key=keys[sort], reverse=(order == "desc"))
        return {"documents": rows}

    @app.post("/documents", status_code=202)
    def ingest(request: Request, payload: dict = Body(...),
               wait: bool = Query(default=False)) -> dict:
        session = _session(hub, request)
        require(session.role, Action.INGEST)
        intake = IntakeDocument.from_dict(payload.get("intake", payload))
        options = payload.get("config", {})
        job = hub.start_ingest(
            intake,
            actor=session.username,
            role=session.role,
            chunk_size=options.get("chunk_size"),
            overlap=options.get("overlap"),
            standard_override=options.get("standard"),
            wait=wait,
        )
        body: dict = {"document_id": job.document_id, "graph_id": job.graph_id,
                      "state": job.state}
        if job.report is not None:
            body["report"] = job.report.to_dict()
        if job.error is not None:
            body["error"] = job.error
        return body

    @app.get("/documents/{document_id}")
    def get_document(request: Request, document_id: str) -> dict:
        session = _session(hub, request)
        require(session.role, Action.READ)
        return _document_json(hub, hub.store.document(document_id))

    @app.get("/documents/{document_id}/pages")
    def get_pages(request: Request, document_id: str) -> dict:
        session = _session(hub, request)
        require(session.role, Action.READ)
        document = hub.store.document(document_id)
        return {"document_id": document.id,
                "pages": [p.to_dict() for p in document.pages]}

    @app.get("/documents/{document_id}/report")
    def get_report(request: Request, document_id: str) -> dict:
        session = _session(hub, request)
        require(session.role, Action.READ)
        document = hub.store.document(document_id)
        job = hub.job_for(document_id)
        body = {
            "document_id": document_id,
            "state": document.state.value,
            "report": document.ingest_report,
        }
        if job is not None:
            body["progress"] = {"chunks_done": job.chunks_done,
                                "chunk_count": job.chunk_count,
                                "job_state": job.state}
            if job.error:
                body["error"] = job.error
        return body

    @app.get("/documents/{document_id}/graph")
    def get_graph(request: Request, document_id: str,
                  entity: Optional[str] = None, hops: int = 1,
                  predicates: Optional[str] = None,
                  document_ids: Optional[str] = None,
                  include_deleted: bool = False,
                  include_review: bool = False,
                  cap: Optional[int] = None) -> dict:
        session = _session(hub, request)
        require(session.role, Action.READ)
        if include_deleted:
            require(session.role, Action.READ_DELETED)
        document = hub.store.document(document_id)
        edge_cap = cap if cap is not None else hub.config.edge_cap
        query_filter = _parse_filter(predicates, document_ids, include_deleted)
        if entity:
            subgraph = hub.store.query_neighborhood(document.graph_id, entity, hops,
                                                    query_filter, edge_cap)
        else:
            subgraph = _whole_graph(hub, document.graph_id, query_filter, edge_cap)
        body = _subgraph_json(hub, subgraph)
        if include_review:
            for edge in body["edges"]:
                edge["aggregate"] = aggregate_judgments(hub.store, edge["id"])
        return body

    def _whole_graph(hub: Hub, graph_id: str, query_filter: QueryFilter,
                     edge_cap: int) -> Subgraph:
        edges = [t for t in hub.store.triples_of_graph(graph_id, include_deleted=True)
                 if query_filter.matches(t)]
        truncated = len(edges) > edge_cap
        edges = edges[:edge_cap]
        nodes = hub.store.entities_of_graph(graph_id)
        return Subgraph(nodes=nodes, edges=edges, truncated=truncated,
                        stats=hub.store.graph_stats(graph_id))

    @app.get("/documents/{document_id}/readiness")
    def get_readiness(request: Request, document_id: str) -> dict:
        session = _session(hub, request)
        require(session.role, Action.READ)
        return readiness(hub.store, document_id, hub.config.coverage_threshold).to_dict()

    @app.post("/documents/{document_id}/certify")
    def certify(request: Request, document_id: str) -> dict:
        session = _session(hub, request)
        require(session.role, Action.CERTIFY_DOCUMENT)
        return certify_document(hub.store, document_id, session.username,
                                hub.config.coverage_threshold)

    # --- triples ---------------------------------------------------------

    @app.post("/triples", status_code=201)
    def create_triple(request: Request, payload: dict = Body(...)) -> dict:
        session = _session(hub, request)
        require(session.role, Action.TRIPLE_CREATE)
        provenance_data = payload.get("provenance") or {}
        if "document_id" not in provenance_data:
            raise EmptyField("provenance.document_id is required")
        record, _ = hub.store.insert_triple(
            str(payload.get("graph_id", "")),
            str(payload.get("subject", "")),
            str(payload.get("predicate", "")),
            str(payload.get("object", "")),
            Provenance.from_dict(provenance_data),
            session.username,
            origin=TripleOrigin.EXPERT_ADDED,
        )
        return hub.store.triple_view(record)

    @app.get("/triples/{triple_id}")
    def get_triple(request: Request, triple_id: str) -> dict:
        session = _session(hub, request)
        require(session.role, Action.READ)
        record = hub.store.get_triple(triple_id)
        view = hub.store.triple_view(record)
        view["judgments"] = [j.to_dict() for j in hub.store.judgments_for(triple_id)]
        view["aggregate"] = aggregate_judgments(hub.store, triple_id)
        view["finalization"] = hub.store.finalization_for(triple_id)
        return view

    @app.patch("/triples/{triple_id}")
    def patch_triple(request: Request, triple_id: str, payload: dict = Body(...)) -> dict:
        session = _session(hub, request)
        require(session.role, Action.TRIPLE_UPDATE)
        record = hub.store.get_triple(triple_id)
        patch = {k: v for k, v in payload.items() if k in ("subject", "predicate", "object")}
        updated = hub.store.update_triple(record.graph_id, triple_id, patch,
                                          session.username)
        return hub.store.triple_view(updated)

    @app.delete("/triples/{triple_id}")
    def delete_triple(request: Request, triple_id: str) -> dict:
        session = _session(hub, request)
        require(session.role, Action.TRIPLE_DELETE)
        record = hub.store.get_triple(triple_id)
        deleted = hub.store.soft_delete_triple(record.graph_id, triple_id,
                                               session.username)
        return hub.store.triple_view(deleted)

    @app.post("/triples/{triple_id}/restore")
    def restore_triple(request: Request, triple_id: str) -> dict:
        session = _session(hub, request)
        require(session.role, Action.TRIPLE_RESTORE)
        record = hub.store.get_triple(triple_id)
        restored = hub.store.restore_triple(record.graph_id, triple_id,
                                            session.username)
        return hub.store.triple_view(restored)

    @app.get("/triples/{triple_id}/evidence")
    def get_evidence(request: Request, triple_id: str) -> dict:
        session = _session(hub, request)
        require(session.role, Action.READ)
        record = hub.store.get_triple(triple_id)
        document = hub.store.document(record.provenance.document_id)
        return {
            "triple_id": triple_id,
            "document_id": document.id,
            "document_title": document.title,
            "page": record.provenance.page,
            "chunk_index": record.provenance.chunk_index,
            "evidence_sentence": record.provenance.evidence_sentence,
        }

    # --- review ----------------------------------------------------------

    @app.post("/triples/{triple_id}/judgments", status_code=201)
    def post_judgment(request: Request, triple_id: str, payload: dict = Body(...)) -> dict:
        session = _session(hub, request)
        require(session.role, Action.SUBMIT_JUDGMENT)
        judgment = submit_judgment(
            hub.store, triple_id,
            reviewer=session.username,
            action=str(payload.get("action", "")),
            feedback=str(payload.get("feedback", "")),
            suggested_triple=payload.get("suggested_triple"),
            verdict=payload.get("verdict"),
            confidence=payload.get("confidence"),
            apply=bool(payload.get("apply", False)),
        )
        return judgment.to_dict()

    @app.post("/triples/{triple_id}/verify")
    def verify_triple(request: Request, triple_id: str) -> dict:
        session = _session(hub, request)
        require(session.role, Action.RUN_VERIFIER)
        assessment = run_verifier(hub.store, triple_id, hub.llm, hub.registry,
                                  model_id=hub.config.llm.model_id,
                                  temperature=hub.config.llm.temperature,
                                  actor=session.username)
        return assessment.to_dict()

    @app.post("/triples/{triple_id}/finalize")
    def finalize_triple(request: Request, triple_id: str, payload: dict = Body(...)) -> dict:
        session = _session(hub, request)
        require(session.role, Action.FINALIZE_TRIPLE)
        record = meta_finalize_triple(hub.store, triple_id,
                                      str(payload.get("final", "")),
                                      str(payload.get("note", "")),
                                      session.username)
        return hub.store.triple_view(record)

    # --- fusion ------------------------------------------------------------

    @app.post("/fusion/overlaps")
    def fusion_overlaps(request: Request, payload: dict = Body(...)) -> dict:
        session = _session(hub, request)
        require(session.role, Action.READ)
        return detect_overlaps(hub.store, list(payload.get("graph_ids", []))).to_dict()

    @app.post("/fusion/preview")
    def fusion_preview(request: Request, payload: dict = Body(...)) -> dict:
        session = _session(hub, request)
        require(session.role, Action.READ)
        cap = int(payload.get("edge_cap", hub.config.edge_cap))
        return build_fused_preview(hub.store, list(payload.get("graph_ids", [])),
                                   edge_cap=cap).to_dict()

    @app.post("/fusion/merge")
    def fusion_merge(request: Request, payload: dict = Body(...)) -> dict:
        session = _session(hub, request)
        require(session.role, Action.APPLY_MERGE)
        plan = MergePlan.from_dict(payload.get("plan", payload))
        if not plan.author:
            plan.author = session.username
        return apply_merge_plan(hub.store, plan, session.username).to_dict()

    # --- tasks --------------------------------------------------------------

    @app.post("/tasks/kgqa")
    def task_kgqa(request: Request, payload: dict = Body(...)) -> dict:
        session = _session(hub, request)
        require(session.role, Action.RUN_TASK)
        result = kgqa(
            hub.store,
            question=str(payload.get("question", "")),
            graph_id=str(payload.get("graph_id", "")),
            hops=int(payload.get("hops", 2)),
            llm=hub.llm if payload.get("use_llm") else None,
            model_id=hub.config.llm.model_id,
            edge_cap=hub.config.edge_cap,
        )
        return {
            "keywords": result.keywords,
            "matched_entities": [m.to_dict() for m in result.matched_entities],
            "answer": result.answer,
            "reasoning_paths": [_path_json(hub, p) for p in result.reasoning_paths],
            "evidence_subgraph": _subgraph_json(hub, result.evidence_subgraph),
            "provenance": result.provenance,
        }

    @app.post("/tasks/paths")
    def task_paths(request: Request, payload: dict = Body(...)) -> dict:
        session = _session(hub, request)
        require(session.role, Action.RUN_TASK)
        paths = path_search(
            hub.store,
            str(payload.get("graph_id", "")),
            str(payload.get("source", "")),
            str(payload.get("target", "")),
            max_hops=int(payload.get("max_hops", 3)),
            max_paths=int(payload.get("max_paths", 20)),
        )
        return {"paths": [_path_json(hub, p) for p in paths]}

    @app.post("/tasks/neighborhood")
    def task_neighborhood(request: Request, payload: dict = Body(...)) -> dict:
        session = _session(hub, request)
        require(session.role, Action.RUN_TASK)
        include_deleted = bool(payload.get("include_deleted", False))
        if include_deleted:
            require(session.role, Action.READ_DELETED)
        predicates = payload.get("predicates")
        query_filter = QueryFilter(
            predicates=set(predicates) if predicates else None,
            include_deleted=include_deleted,
        )
        subgraph = bounded_hop(
            hub.store,
            str(payload.get("graph_id", "")),
            str(payload.get("entity", "")),
            hops=int(payload.get("hops", 1)),
            query_filter=query_filter,
            edge_cap=int(payload.get("cap", hub.config.edge_cap)),
        )
        return _subgraph_json(hub, subgraph)

    @app.post("/tasks/compare")
    def task_compare(request: Request, payload: dict = Body(...)) -> dict:
        session = _session(hub, request)
        require(session.role, Action.RUN_TASK)
        return compare_entities(hub.store, str(payload.get("graph_id", "")),
                                list(payload.get("entities", []))).to_dict()

    @app.post("/tasks/duplicates")
    def task_duplicates(request: Request, payload: dict = Body(...)) -> dict:
        session = _session(hub, request)
        require(session.role, Action.RUN_TASK)
        pairs = detect_duplicates(hub.store, str(payload.get("graph_id", "")),
                                  max_edit_distance=int(payload.get("max_edit_distance", 2)))
        return {"pairs": pairs}

    @app.post("/tasks/gaps")
    def task_gaps(request: Request, payload: dict = Body(...)) -> dict:
        session = _session(hub, request)
        require(session.role, Action.RUN_TASK)
        graph_id = str(payload.get("graph_id", ""))
        standard = payload.get("standard")
        if standard is None:
            graph = hub.store.graph(graph_id)
            if graph.primary_document_id:
                standard = hub.store.document(graph.primary_document_id).standard
            else:
                standard = "unknown"
        return coverage_gaps(hub.store, graph_id,
                             checklist=payload.get("checklist"),
                             standard=standard).to_dict()

    @app.post("/tasks/diagnostics")
    def task_diagnostics(request: Request, payload: dict = Body(...)) -> dict:
        session = _session(hub, request)
        require(session.role, Action.RUN_TASK)
        return schema_diagnostics(hub.store, str(payload.get("graph_id", ""))).to_dict()

    @app.post("/tasks/trace")
    def task_trace(request: Request, payload: dict = Body(...)) -> dict:
        session = _session(hub, request)
        require(session.role, Action.RUN_TASK)
        rows = provenance_trace(
            hub.store,
            str(payload.get("graph_id", "")),
            entity=payload.get("entity"),
            predicate=payload.get("predicate"),
            document_id=payload.get("document_id"),
            page=payload.get("page"),
        )
        return {"rows": rows}

    @app.post("/analytics")
    def analytics(request: Request, payload: dict = Body(...)) -> dict:
        session = _session(hub, request)
        require(session.role, Action.RUN_TASK)
        graph_id = str(payload.get("graph_id", ""))
        graph = hub.store.graph(graph_id)
        standard = "unknown"
        if graph.primary_document_id:
            standard = hub.store.document(graph.primary_document_id).standard
        report = run_analysis(
            hub.store, graph_id,
            preset=str(payload.get("preset", "")),
            depth=int(payload.get("depth", 1)),
            llm=hub.llm,
            registry=hub.registry,
            user_prompt=payload.get("user_prompt"),
            model_id=hub.config.llm.model_id,
            temperature=hub.config.llm.temperature,
            standard=standard,
        )
        return report.to_dict()

    # --- audit and export --------------------------------------------------

    @app.get("/audit")
    def audit(request: Request, document_id: Optional[str] = None,
              from_seq: int = 0) -> dict:
        session = _session(hub, request)
        require(session.role, Action.READ_AUDIT)
        entries = hub.store.audit_entries(from_seq=from_seq, document_id=document_id)
        return {"entries": [e.to_dict() for e in entries]}

    @app.get("/audit/verify")
    def audit_verify(request: Request) -> dict:
        session = _session(hub, request)
        require(session.role, Action.READ_AUDIT)
        return hub.store.verify_audit()

    @app.get("/export/edges")
    def export_edges(request: Request, graph_id: str,
                     predicates: Optional[str] = None,
                     document_ids: Optional[str] = None,
                     include_deleted: bool = False,
                     format: Optional[str] = None) -> Response:
        session = _session(hub, request)
        require(session.role, Action.EXPORT)
        if include_deleted:
            require(session.role, Action.READ_DELETED)
        rows = hub.store.export_edges(
            graph_id, _parse_filter(predicates, document_ids, include_deleted))
        wants_csv = format == "csv" or "text/csv" in request.headers.get("accept", "")
        if wants_csv:
            buffer = io.StringIO()
            writer = csv.DictWriter(
                buffer,
                fieldnames=["subject", "predicate", "object", "document_id", "page", "status"],
                lineterminator="\r\n",
            )
            writer.writeheader()
            writer.writerows(rows)
            return Response(content=buffer.getvalue(), media_type="text/csv")
        return Response(content=json.dumps({"rows": rows}),
                        media_type="application/json")

    # --- admin ---------------------------------------------------------------

    @app.post("/admin/accounts", status_code=201)
    def create_account(request: Request, payload: dict = Body(...)) -> dict:
        session = _session(hub, request)
        require(session.role, Action.MANAGE_ACCOUNTS)
        account = hub.accounts.create_account(
            str(payload.get("username", "")),
            str(payload.get("password", "")),
            Role(str(payload.get("role", "expert"))),
        )
        hub.store.record_audit_event("account_created", session.username, account.id,
                                     {"username": account.username,
                                      "role": account.role.value})
        return {"id": account.id, "username": account.username,
                "role": account.role.value, "active": account.active}

    @app.post("/admin/accounts/{account_id}/deactivate")
    def deactivate_account(request: Request, account_id: str) -> dict:
        session = _session(hub, request)
        require(session.role, Action.MANAGE_ACCOUNTS)
        account = hub.accounts.deactivate(account_id)
        hub.store.record_audit_event("account_deactivated", session.username,
                                     account.id, {"username": account.username})
        return {"id": account.id, "username": account.username, "active": account.active}

    @app.post("/admin/reset-tokens", status_code=201)
    def issue_reset_token(request: Request, payload: dict = Body(...)) -> dict:
        session = _session(hub, request)
        require(session.role, Action.MANAGE_ACCOUNTS)
        token = hub.accounts.issue_reset_token(str(payload.get("account_id", "")))
        hub.store.record_audit_event("reset_token_issued", session.username,
                                     token.account_id, {"token_id": token.id})
        return {"token_id": token.id, "secret": token.secret,
                "expires_at": token.expires_at.isoformat()}

    @app.post("/admin/reset-tokens/{token_id}/revoke")
    def revoke_reset_token(request: Request, token_id: str) -> dict:
        session = _session(hub, request)
        require(session.role, Action.MANAGE_ACCOUNTS)
        token = hub.accounts.revoke_reset_token(token_id)
        hub.store.record_audit_event("reset_token_revoked", session.username,
                                     token.account_id, {"token_id": token.id})
        return {"token_id": token.id, "revoked": token.revoked}

    return app
