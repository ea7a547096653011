"""Prompt registry backed by a YAML configuration file.

All model-facing text lives in one YAML document (a bundled default
ships inside the package). Templates use {name} placeholders that are
substituted literally, so JSON braces inside prompt bodies need no
escaping.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import Optional

import yaml

from ..errors import MissingPrompt

STANDARD_IDS = ("sasb", "gri", "ifrs_s2", "tcfd")
ANALYSIS_PRESETS = ("executive", "quality_audit", "compliance", "ontology_health")


def render(template: str, **values: str) -> str:
    """Substitute {key} tokens; literal braces elsewhere stay untouched."""
    out = template
    for key, value in values.items():
        out = out.replace("{" + key + "}", str(value))
    return out


class PromptRegistry:
    def __init__(self, data: dict):
        self._data = data

    @classmethod
    def load(cls, path: Optional[Path] = None) -> "PromptRegistry":
        if path is None:
            text = resources.files("kgcurate.data").joinpath("prompts.yaml").read_text(encoding="utf-8")
        else:
            text = Path(path).read_text(encoding="utf-8")
        return cls(yaml.safe_load(text))

    def get(self, *keys: str) -> str:
        node = self._data
        for key in keys:
            if not isinstance(node, dict) or key not in node:
                raise MissingPrompt(f"prompt registry is missing key: {'.'.join(keys)}")
            node = node[key]
        if not isinstance(node, str):
            raise MissingPrompt(f"prompt registry key {'.'.join(keys)} is not a string")
        return node

    @property
    def chunk_size(self) -> int:
        return int(self._data.get("chunk_size", 4000))

    @property
    def overlap(self) -> int:
        return int(self._data.get("overlap", 200))

    def identification_prompt(self) -> str:
        return self.get("identification", "system")

    def select_extraction(self, standard: str) -> dict:
        """System prompt for the standard (general for unknown) plus the
        shared user template with its {content} placeholder."""
        key = standard if standard in STANDARD_IDS else "general"
        return {
            "system_prompt": self.get("extraction", key, "system"),
            "user_prompt_template": self.get("extraction", "general", "user"),
        }

    def evaluation_prompts(self) -> tuple[str, str]:
        return self.get("evaluation", "system"), self.get("evaluation", "user")

    def analysis_prompts(self, preset: str) -> tuple[str, str, str]:
        """(system template, user template, preset focus text)."""
        if preset not in ANALYSIS_PRESETS:
            raise MissingPrompt(f"unknown analysis preset: {preset}")
        return (
            self.get("analysis", "system"),
            self.get("analysis", "user"),
            self.get("analysis", "presets", preset),
        )


def select_prompt(standard: str, registry: PromptRegistry) -> dict:
    return registry.select_extraction(standard)
