"""HTTP JSON API over a loaded knowledge graph."""

from .app import create_app
from .cards import build_item_card
from .config import ServiceConfig
from .sessions import SessionTable
from .state import AppState, StartupError, load_state

__all__ = [
    "AppState",
    "ServiceConfig",
    "SessionTable",
    "StartupError",
    "build_item_card",
    "create_app",
    "load_state",
]
