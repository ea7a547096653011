"""Record/replay fixtures for deterministic LLM-backed runs.

A fixture file holds one JSON object per line:

    {"request_digest": "<sha256 of the canonical request>", "response_text": "..."}

ReplayClient answers from the fixture and performs no network traffic
at all; a missing digest raises ReplayMiss, which is a hard failure
(the fixture and the code disagree about the request being sent).
RecordingClient wraps a live client and appends every exchange, which
is how fixtures get produced in the first place.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import ReplayMiss
from .client import LlmClient, LlmRequest, LlmResponse


class ReplayClient:
    def __init__(self, fixture_path: Path):
        self.fixture_path = Path(fixture_path)
        self._responses: dict[str, str] = {}
        for line in self.fixture_path.read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            record = json.loads(line)
            self._responses[record["request_digest"]] = record["response_text"]

    def __len__(self) -> int:
        return len(self._responses)

    def complete(self, request: LlmRequest) -> LlmResponse:
        digest = request.digest()
        if digest not in self._responses:
            raise ReplayMiss(
                f"no recorded response for request digest {digest} "
                f"(model={request.model_id!r}, user prefix={request.user[:80]!r})"
            )
        return LlmResponse(text=self._responses[digest])


class RecordingClient:
    """Proxy that records every (request digest, response) pair to a fixture file."""

    def __init__(self, inner: LlmClient, fixture_path: Path):
        self.inner = inner
        self.fixture_path = Path(fixture_path)
        self.fixture_path.parent.mkdir(parents=True, exist_ok=True)

    def complete(self, request: LlmRequest) -> LlmResponse:
        response = self.inner.complete(request)
        with open(self.fixture_path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps({
                "request_digest": request.digest(),
                "response_text": response.text,
            }) + "\n")
        return response


def write_fixture(path: Path, pairs: list[tuple[LlmRequest, str]]) -> None:
    """Write a fixture file from scratch (used by fixture generators)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for request, text in pairs:
            fh.write(json.dumps({
                "request_digest": request.digest(),
                "response_text": text,
            }) + "\n")
