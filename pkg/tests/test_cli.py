from __future__ import annotations

import json

import httpx
import pytest
from click.testing import CliRunner

from kgcurate.cli import main
from kgcurate.governance.accounts import AccountStore
from kgcurate.llm.client import LlmRequest
from kgcurate.llm.http_client import HttpLlmClient
from kgcurate.llm.replay import RecordingClient, ReplayClient

from conftest import INTAKE_PATH, REPLAY_PATH


@pytest.fixture
def runner():
    return CliRunner()


def test_ingest_prints_report(runner, tmp_path):
    result = runner.invoke(main, [
        "ingest", str(INTAKE_PATH),
        "--data-dir", str(tmp_path / "data"),
        "--replay", str(REPLAY_PATH),
    ])
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    assert report["triples_inserted"] == 73
    assert report["standard"] == "ifrs_s2"


def test_export_csv_after_ingest(runner, tmp_path):
    data_dir = tmp_path / "data"
    ingest = runner.invoke(main, ["ingest", str(INTAKE_PATH),
                                  "--data-dir", str(data_dir),
                                  "--replay", str(REPLAY_PATH)])
    graph_id = json.loads(ingest.output)["graph_id"]
    result = runner.invoke(main, ["export", graph_id, "--data-dir", str(data_dir),
                                  "--format", "csv"])
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    assert lines[0] == "subject,predicate,object,document_id,page,status"
    assert len(lines) == 74
    jsonl = runner.invoke(main, ["export", graph_id, "--data-dir", str(data_dir)])
    rows = [json.loads(l) for l in jsonl.output.strip().splitlines()]
    assert len(rows) == 73


def test_export_certified_fixture_has_49_rows(runner, tmp_path):
    data_dir = tmp_path / "data"
    ingest = runner.invoke(main, ["ingest", str(INTAKE_PATH),
                                  "--data-dir", str(data_dir),
                                  "--replay", str(REPLAY_PATH)])
    report = json.loads(ingest.output)
    graph_id, doc_id = report["graph_id"], report["document_id"]

    # Scripted review straight against the store: keep 49, reject 24, certify.
    from kgcurate.governance.review import certify_document, meta_finalize_triple, submit_judgment
    from kgcurate.store.graph_store import GraphStore

    store = GraphStore(data_dir / "graph")
    triples = store.triples_of_graph(graph_id)
    for t in triples[:49]:
        submit_judgment(store, t.id, "expert", "keep")
    for t in triples[49:]:
        submit_judgment(store, t.id, "expert", "delete")
        meta_finalize_triple(store, t.id, "reject", "", "meta")
    certify_document(store, doc_id, "meta")
    store.close()

    result = runner.invoke(main, ["export", graph_id, "--data-dir", str(data_dir),
                                  "--format", "csv"])
    lines = result.output.strip().splitlines()
    assert len(lines) == 50  # header + 49 certified rows
    assert all(line.endswith("Certified") for line in lines[1:])


def test_export_unknown_graph_is_machine_parsable(runner, tmp_path):
    result = runner.invoke(main, ["export", "g9", "--data-dir", str(tmp_path)])
    assert result.exit_code == 1
    assert "error code=unknown_graph" in result.output


def test_verify_audit_detects_tamper(runner, tmp_path):
    data_dir = tmp_path / "data"
    runner.invoke(main, ["ingest", str(INTAKE_PATH), "--data-dir", str(data_dir),
                         "--replay", str(REPLAY_PATH)])
    ok = runner.invoke(main, ["verify-audit", "--data-dir", str(data_dir)])
    assert ok.exit_code == 0
    assert json.loads(ok.output)["ok"] is True

    log_path = data_dir / "graph" / "events.log"
    raw = bytearray(log_path.read_bytes())
    lines = raw.split(b"\n")
    line = bytearray(lines[8])  # seq 7
    line[len(line) // 2] ^= 0x01
    lines[8] = bytes(line)
    log_path.write_bytes(b"\n".join(lines))

    bad = runner.invoke(main, ["verify-audit", "--data-dir", str(data_dir)])
    assert bad.exit_code == 1
    assert "first_bad_seq=7" in bad.output


def test_replay_check(runner):
    result = runner.invoke(main, ["replay-check", str(REPLAY_PATH),
                                  "--intake", str(INTAKE_PATH)])
    assert result.exit_code == 0
    assert json.loads(result.output)["triples_inserted"] == 73


def test_account_create_and_authenticate(runner, tmp_path):
    result = runner.invoke(main, [
        "account", "create", "--username", "ops", "--password", "pw",
        "--role", "meta_expert", "--data-dir", str(tmp_path / "data"),
    ])
    assert result.exit_code == 0, result.output
    accounts = AccountStore(tmp_path / "data" / "accounts.json")
    session = accounts.authenticate("ops", "pw")
    assert session.role.value == "meta_expert"


def test_record_fixtures_roundtrip(runner, tmp_path, monkeypatch):
    # A mock provider stands in for the live endpoint; the recorded
    # fixture must replay to the same responses.
    def fake_provider(request: httpx.Request) -> httpx.Response:
        body = json.loads(request.content)
        text = "(a, b, c)" if "extract" in body["messages"][1]["content"].lower() \
            else "gri"
        return httpx.Response(200, json={
            "choices": [{"message": {"content": text}}]})

    monkeypatch.setenv("TEST_LLM_KEY", "k")
    transport = httpx.MockTransport(fake_provider)

    intake = tmp_path / "intake.json"
    intake.write_text(json.dumps({
        "title": "Tiny doc",
        "pages": [{"page": 1, "text": "Some short text to extract."}],
    }), encoding="utf-8")

    live = HttpLlmClient(endpoint="https://provider.test/v1/chat",
                         model_id="default", key_env="TEST_LLM_KEY",
                         transport=transport)
    fixture_path = tmp_path / "recorded.jsonl"
    recorder = RecordingClient(live, fixture_path)
    request = LlmRequest(model_id="default", system="s",
                         user="extract from this", temperature=0.0)
    recorded = recorder.complete(request)
    assert recorded.text == "(a, b, c)"

    replay = ReplayClient(fixture_path)
    assert replay.complete(request).text == "(a, b, c)"
