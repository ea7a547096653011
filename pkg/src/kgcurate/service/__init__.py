from .app import create_app
from .config import ServiceConfig
from .hub import Hub, build_llm_client

__all__ = ["Hub", "ServiceConfig", "build_llm_client", "create_app"]
