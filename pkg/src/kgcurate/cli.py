"""Command-line interface: serve, ingest, export, audit, fixtures, accounts."""

from __future__ import annotations

import csv
import json
import sys
from pathlib import Path
from typing import Optional

import click

from .errors import KgError, ReplayMiss
from .governance.accounts import AccountStore
from .governance.rbac import Role
from .ingest.chunker import ChunkConfig
from .ingest.pipeline import IngestConfig, IntakeDocument, ingest_document
from .ingest.prompts import PromptRegistry
from .llm.replay import RecordingClient, ReplayClient
from .service.config import LlmSettings, ServiceConfig
from .service.hub import Hub, build_llm_client
from .store.graph_store import GraphStore


def _fail(code: str, message: str) -> None:
    click.echo(f"error code={code} message={message}", err=True)
    sys.exit(1)


def _load_config(config_path: Optional[str], data_dir: Optional[str],
                 replay: Optional[str]) -> ServiceConfig:
    if config_path:
        return ServiceConfig.from_yaml(Path(config_path))
    fixture = Path(replay) if replay else None
    if fixture is None:
        _fail("invalid_config", "pass --config, or --replay with an optional --data-dir")
    return ServiceConfig(
        data_dir=Path(data_dir or "./data"),
        llm=LlmSettings(mode="replay", fixture_path=fixture),
    )


@click.group()
def main() -> None:
    """Knowledge-graph extraction, curation, and certification toolkit."""


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
def serve(config_path: str) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service.app import create_app

    try:
        config = ServiceConfig.from_yaml(Path(config_path))
        app = create_app(Hub(config))
    except KgError as exc:
        _fail(exc.code, exc.message)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")


@main.command()
@click.argument("intake_path", type=click.Path(exists=True))
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--data-dir", type=click.Path())
@click.option("--replay", type=click.Path(exists=True),
              help="Replay fixture file (no network).")
@click.option("--standard", "standard_override",
              type=click.Choice(["sasb", "gri", "ifrs_s2", "tcfd", "unknown"]))
@click.option("--chunk-size", type=int)
@click.option("--overlap", type=int)
@click.option("--actor", default="cli")
def ingest(intake_path: str, config_path: Optional[str], data_dir: Optional[str],
           replay: Optional[str], standard_override: Optional[str],
           chunk_size: Optional[int], overlap: Optional[int], actor: str) -> None:
    """Ingest an intake JSON document and print the report."""
    config = _load_config(config_path, data_dir, replay)
    try:
        hub = Hub(config)
        intake = IntakeDocument.from_file(Path(intake_path))
        job = hub.start_ingest(intake, actor=actor, role=Role.EXPERT,
                               chunk_size=chunk_size, overlap=overlap,
                               standard_override=standard_override, wait=True)
        if job.state != "done":
            _fail("ingest_failed", job.error or "unknown failure")
        click.echo(json.dumps(job.report.to_dict(), indent=2))
    except ReplayMiss as exc:
        _fail("replay_miss", str(exc))
    except KgError as exc:
        _fail(exc.code, exc.message)


@main.command()
@click.argument("graph_id")
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--data-dir", type=click.Path())
@click.option("--format", "fmt", type=click.Choice(["jsonl", "csv"]), default="jsonl")
@click.option("--include-deleted", is_flag=True, default=False)
def export(graph_id: str, config_path: Optional[str], data_dir: Optional[str],
           fmt: str, include_deleted: bool) -> None:
    """Export graph edges as JSONL or RFC-4180 CSV on stdout."""
    try:
        store = _open_store(config_path, data_dir)
        from .store.models import QueryFilter

        rows = store.export_edges(graph_id, QueryFilter(include_deleted=include_deleted))
        if fmt == "csv":
            writer = csv.DictWriter(
                sys.stdout,
                fieldnames=["subject", "predicate", "object", "document_id", "page", "status"],
                lineterminator="\r\n",
            )
            writer.writeheader()
            writer.writerows(rows)
        else:
            for row in rows:
                click.echo(json.dumps(row))
    except KgError as exc:
        _fail(exc.code, exc.message)


@main.command(name="verify-audit")
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--data-dir", type=click.Path())
def verify_audit(config_path: Optional[str], data_dir: Optional[str]) -> None:
    """Verify the event-log hash chain; exit 1 on the first broken entry."""
    # Works straight off the file: a tampered log must still be checkable
    # even when replaying it into a store would crash.
    from .store.eventlog import verify_log
    from .store.graph_store import EVENTS_FILENAME

    if config_path:
        base = ServiceConfig.from_yaml(Path(config_path)).data_dir
    else:
        base = Path(data_dir or "./data")
    log_path = base / "graph" / EVENTS_FILENAME
    if not log_path.exists():
        _fail("not_found", f"no event log at {log_path}")
    result = verify_log(log_path)
    if result.get("ok"):
        click.echo(json.dumps(result))
    else:
        click.echo(f"error code=chain_broken first_bad_seq={result['first_bad_seq']}",
                   err=True)
        sys.exit(1)


def _open_store(config_path: Optional[str], data_dir: Optional[str]) -> GraphStore:
    if config_path:
        config = ServiceConfig.from_yaml(Path(config_path))
        return GraphStore(config.data_dir / "graph")
    return GraphStore(Path(data_dir or "./data") / "graph")


@main.command(name="record-fixtures")
@click.argument("intake_path", type=click.Path(exists=True))
@click.option("--config", "config_path", required=True, type=click.Path(exists=True),
              help="Service config in live mode; calls are proxied and recorded.")
@click.option("--out", "fixture_out", required=True, type=click.Path())
@click.option("--standard", "standard_override")
def record_fixtures(intake_path: str, config_path: str, fixture_out: str,
                    standard_override: Optional[str]) -> None:
    """Run an ingestion against the live provider, recording every exchange."""
    try:
        config = ServiceConfig.from_yaml(Path(config_path))
        live = build_llm_client(config)
        recorder = RecordingClient(live, Path(fixture_out))
        hub = Hub(config, llm=recorder)
        intake = IntakeDocument.from_file(Path(intake_path))
        job = hub.start_ingest(intake, actor="recorder", role=Role.EXPERT,
                               standard_override=standard_override, wait=True)
        if job.state != "done":
            _fail("ingest_failed", job.error or "unknown failure")
        click.echo(json.dumps({"fixture": fixture_out,
                               "report": job.report.to_dict()}, indent=2))
    except KgError as exc:
        _fail(exc.code, exc.message)


@main.command(name="replay-check")
@click.argument("fixture_path", type=click.Path(exists=True))
@click.option("--intake", "intake_path", required=True, type=click.Path(exists=True))
@click.option("--standard", "standard_override")
@click.option("--chunk-size", type=int)
@click.option("--overlap", type=int)
def replay_check(fixture_path: str, intake_path: str, standard_override: Optional[str],
                 chunk_size: Optional[int], overlap: Optional[int]) -> None:
    """Re-run an ingestion against a fixture (scratch store) and print the report."""
    try:
        registry = PromptRegistry.load()
        store = GraphStore()  # in-memory scratch
        llm = ReplayClient(Path(fixture_path))
        intake = IntakeDocument.from_file(Path(intake_path))
        ingest_config = IngestConfig(
            chunk=ChunkConfig(
                chunk_size=chunk_size or registry.chunk_size,
                overlap=overlap if overlap is not None else registry.overlap,
            ),
            standard_override=standard_override,
        )
        report = ingest_document(intake, ingest_config, registry, llm, store,
                                 actor="replay-check")
        click.echo(json.dumps(report.to_dict(), indent=2))
    except ReplayMiss as exc:
        _fail("replay_miss", str(exc))
    except KgError as exc:
        _fail(exc.code, exc.message)


@main.group()
def account() -> None:
    """Account management (writes the accounts file directly)."""


@account.command(name="create")
@click.option("--username", required=True)
@click.option("--password", required=True)
@click.option("--role", type=click.Choice([r.value for r in Role]), required=True)
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--data-dir", type=click.Path())
def account_create(username: str, password: str, role: str,
                   config_path: Optional[str], data_dir: Optional[str]) -> None:
    if config_path:
        config = ServiceConfig.from_yaml(Path(config_path))
        accounts_path = config.data_dir / "accounts.json"
    else:
        accounts_path = Path(data_dir or "./data") / "accounts.json"
    try:
        accounts_path.parent.mkdir(parents=True, exist_ok=True)
        store = AccountStore(accounts_path)
        created = store.create_account(username, password, Role(role))
        click.echo(json.dumps({"id": created.id, "username": created.username,
                               "role": created.role.value}))
    except KgError as exc:
        _fail(exc.code, exc.message)


if __name__ == "__main__":
    main()
