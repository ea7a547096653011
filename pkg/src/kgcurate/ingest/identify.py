"""LLM-based document family identification.

Sends an opening snippet of the document to the classifier prompt and
expects one lowercase identifier back. One retry with an explicit
reminder (a changed request, so record/replay fixtures can store a
distinct second answer); anything still unrecognized falls back to
"unknown", which routes to the general extraction prompt.
"""

from __future__ import annotations

from ..errors import EmptyField
from ..llm.client import LlmClient, LlmRequest
from .prompts import STANDARD_IDS, PromptRegistry

DEFAULT_SNIPPET_CHARS = 2000
RETRY_REMINDER = "\n\nReminder: respond with exactly one lowercase identifier and nothing else."
UNKNOWN = "unknown"


def identify_standard(snippet: str, llm: LlmClient, registry: PromptRegistry,
                      model_id: str = "default", temperature: float = 0.0) -> str:
    if not snippet.strip():
        raise EmptyField("identification snippet is empty")
    system = registry.identification_prompt()
    user = snippet
    for attempt in range(2):
        request = LlmRequest(
            model_id=model_id,
            system=system,
            user=user if attempt == 0 else user + RETRY_REMINDER,
            temperature=temperature,
        )
        answer = llm.complete(request).text.strip().lower()
        if answer in STANDARD_IDS:
            return answer
    return UNKNOWN
