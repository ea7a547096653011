from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from kgcurate.governance.rbac import Role
from kgcurate.service.app import create_app
from kgcurate.service.config import LlmSettings, ServiceConfig
from kgcurate.service.hub import Hub

from conftest import REPLAY_PATH

PASSWORD = "secret-pw"


def make_service(tmp_path: Path, fixture_path: Path = REPLAY_PATH,
                 coverage_threshold: float = 1.0):
    """Hub + TestClient + one logged-in token per role."""
    config = ServiceConfig(
        data_dir=tmp_path / "data",
        llm=LlmSettings(mode="replay", fixture_path=fixture_path),
        coverage_threshold=coverage_threshold,
    )
    hub = Hub(config)
    for username, role in (("expert1", Role.EXPERT), ("expert2", Role.EXPERT),
                           ("meta1", Role.META_EXPERT), ("admin1", Role.ADMIN)):
        hub.accounts.create_account(username, PASSWORD, role)
    client = TestClient(create_app(hub), raise_server_exceptions=False)

    tokens = {}
    for username, key in (("expert1", "expert"), ("expert2", "expert2"),
                          ("meta1", "meta"), ("admin1", "admin")):
        response = client.post("/auth/login",
                               json={"username": username, "password": PASSWORD})
        assert response.status_code == 200, response.text
        tokens[key] = response.json()["token"]
    tokens["guest"] = client.post("/auth/guest").json()["token"]
    return client, hub, tokens


def auth(token: str) -> dict:
    return {"Authorization": f"Bearer {token}"}


def ingest_fixture_document(client: TestClient, token: str,
                            intake: dict) -> dict:
    response = client.post("/documents?wait=true", json={"intake": intake},
                           headers=auth(token))
    assert response.status_code == 202, response.text
    body = response.json()
    assert body["state"] == "done", body
    return body
