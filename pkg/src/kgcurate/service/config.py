"""Service configuration loaded from YAML.

Exactly one LLM mode is active: "replay" answers from a recorded
fixture file and performs no network traffic; "live" talks to an HTTP
provider whose key comes from the environment variable named in the
config. A live config with the key variable unset fails at startup,
not at first request.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import yaml

from ..errors import InvalidConfig

DEFAULT_EDGE_CAP = 500
DEFAULT_COVERAGE_THRESHOLD = 1.0
DEFAULT_SESSION_TTL_HOURS = 24.0


@dataclass
class LlmSettings:
    mode: str = "replay"                 # replay | live
    fixture_path: Optional[Path] = None
    endpoint: Optional[str] = None
    model_id: str = "default"
    key_env: str = "KGCURATE_LLM_KEY"
    temperature: float = 0.0


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8080
    data_dir: Path = Path("./data")
    prompt_registry: Optional[Path] = None
    llm: LlmSettings = field(default_factory=LlmSettings)
    coverage_threshold: float = DEFAULT_COVERAGE_THRESHOLD
    edge_cap: int = DEFAULT_EDGE_CAP
    session_ttl_hours: float = DEFAULT_SESSION_TTL_HOURS

    @classmethod
    def from_yaml(cls, path: Path) -> "ServiceConfig":
        data = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
        return cls.from_dict(data, base_dir=Path(path).resolve().parent)

    @classmethod
    def from_dict(cls, data: dict, base_dir: Optional[Path] = None) -> "ServiceConfig":
        def resolve(p) -> Optional[Path]:
            if p is None:
                return None
            p = Path(p)
            if base_dir is not None and not p.is_absolute():
                p = base_dir / p
            return p

        listen = data.get("listen", {})
        llm_data = data.get("llm", {})
        thresholds = data.get("thresholds", {})
        config = cls(
            host=listen.get("host", "127.0.0.1"),
            port=int(listen.get("port", 8080)),
            data_dir=resolve(data.get("data_dir", "./data")),
            prompt_registry=resolve(data.get("prompt_registry")),
            llm=LlmSettings(
                mode=llm_data.get("mode", "replay"),
                fixture_path=resolve(llm_data.get("fixture_path")),
                endpoint=llm_data.get("endpoint"),
                model_id=llm_data.get("model_id", "default"),
                key_env=llm_data.get("key_env", "KGCURATE_LLM_KEY"),
                temperature=float(llm_data.get("temperature", 0.0)),
            ),
            coverage_threshold=float(thresholds.get("coverage_threshold",
                                                    DEFAULT_COVERAGE_THRESHOLD)),
            edge_cap=int(thresholds.get("edge_cap", DEFAULT_EDGE_CAP)),
            session_ttl_hours=float(thresholds.get("session_ttl_hours",
                                                   DEFAULT_SESSION_TTL_HOURS)),
        )
        config.validate()
        return config

    def validate(self) -> None:
        if self.llm.mode not in ("replay", "live"):
            raise InvalidConfig(f"llm.mode must be replay or live, got {self.llm.mode!r}")
        if self.llm.mode == "replay":
            if self.llm.fixture_path is None:
                raise InvalidConfig("replay mode requires llm.fixture_path")
            if self.llm.endpoint is not None:
                raise InvalidConfig("replay mode must not set llm.endpoint")
        else:
            if not self.llm.endpoint:
                raise InvalidConfig("live mode requires llm.endpoint")
            if self.llm.fixture_path is not None:
                raise InvalidConfig("live mode must not set llm.fixture_path")
            if not os.environ.get(self.llm.key_env):
                raise InvalidConfig(
                    f"live mode requires the {self.llm.key_env} environment variable")
