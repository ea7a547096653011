"""HTTP chat-completion client for a hosted model provider.

Speaks the common chat-completions wire shape: POST {endpoint} with
messages and temperature, read choices[0].message.content. The API key
comes from an environment variable named in the service config, never
from the config file itself.
"""

from __future__ import annotations

import os
from typing import Optional

import httpx

from ..errors import InvalidConfig, LlmUnavailable
from .client import LlmRequest, LlmResponse


class HttpLlmClient:
    def __init__(self, endpoint: str, model_id: str, key_env: str,
                 timeout: float = 60.0, transport: Optional[httpx.BaseTransport] = None):
        api_key = os.environ.get(key_env, "")
        if not api_key:
            raise InvalidConfig(f"environment variable {key_env} is not set")
        self.endpoint = endpoint
        self.model_id = model_id
        self._client = httpx.Client(
            timeout=timeout,
            headers={"Authorization": f"Bearer {api_key}"},
            transport=transport,
        )

    def complete(self, request: LlmRequest) -> LlmResponse:
        body = {
            "model": request.model_id or self.model_id,
            "messages": [
                {"role": "system", "content": request.system},
                {"role": "user", "content": request.user},
            ],
            "temperature": request.temperature,
        }
        try:
            response = self._client.post(self.endpoint, json=body)
            response.raise_for_status()
            payload = response.json()
            return LlmResponse(text=payload["choices"][0]["message"]["content"])
        except httpx.HTTPError as exc:
            raise LlmUnavailable(f"provider request failed: {exc}")
        except (KeyError, IndexError, ValueError) as exc:
            raise LlmUnavailable(f"malformed provider response: {exc}")

    def close(self) -> None:
        self._client.close()
