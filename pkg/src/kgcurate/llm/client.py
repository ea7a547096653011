"""Pluggable LLM client contract.

A request is the four fields (model_id, system, user, temperature); a
response is plain text. The digest of the canonical request JSON keys
replay fixtures, so any two clients given the same request agree on
the fixture lookup key.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Protocol


@dataclass(frozen=True)
class LlmRequest:
    model_id: str
    system: str
    user: str
    temperature: float = 0.0

    def digest(self) -> str:
        canonical = json.dumps(
            {
                "model_id": self.model_id,
                "system": self.system,
                "user": self.user,
                "temperature": self.temperature,
            },
            sort_keys=True,
            separators=(",", ":"),
            ensure_ascii=True,
        )
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass
class LlmResponse:
    text: str


class LlmClient(Protocol):
    def complete(self, request: LlmRequest) -> LlmResponse: ...
