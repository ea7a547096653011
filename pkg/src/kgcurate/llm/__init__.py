from .client import LlmClient, LlmRequest, LlmResponse
from .http_client import HttpLlmClient
from .replay import RecordingClient, ReplayClient, write_fixture

__all__ = [
    "HttpLlmClient",
    "LlmClient",
    "LlmRequest",
    "LlmResponse",
    "RecordingClient",
    "ReplayClient",
    "write_fixture",
]
