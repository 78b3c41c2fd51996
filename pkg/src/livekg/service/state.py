"""Startup loading and validation of every configured store."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ..kg import KgError, KnowledgeGraph, import_jsonl
from ..qa import Engine, EngineConfig, FaqStore
from ..retrieval import Lexicon, LexiconError
from .config import ConfigError, ServiceConfig
from .sessions import SessionTable


class StartupError(RuntimeError):
    """The service must not start; the message says why."""


@dataclass
class AppState:
    config: ServiceConfig
    kg: KnowledgeGraph
    engine: Engine
    sessions: SessionTable
    images_dir: Path


def _load_templates(path: Path) -> dict[str, str]:
    data = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(data, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in data.items()
    ):
        raise ValueError("templates must be a JSON object of strings")
    return data


def load_state(config_path: str | Path) -> AppState:
    """Load and validate everything; any defect aborts with a diagnostic."""
    try:
        config = ServiceConfig.from_file(config_path)
    except ConfigError as exc:
        raise StartupError(str(exc)) from None

    def loading(what: str, path: Path):
        def fail(exc: Exception) -> StartupError:
            return StartupError(f"{what} {path}: {exc}")
        return fail

    fail = loading("knowledge graph", config.kg)
    try:
        kg = import_jsonl(config.kg)
    except (KgError, OSError) as exc:
        raise fail(exc) from None
    kg.run_completion()

    try:
        search_lexicon = Lexicon.load(config.search_lexicon)
    except (LexiconError, OSError) as exc:
        raise loading("search lexicon", config.search_lexicon)(exc) from None
    try:
        property_lexicon = Lexicon.load(config.property_lexicon)
    except (LexiconError, OSError) as exc:
        raise loading("property lexicon", config.property_lexicon)(exc) from None

    backend_kwargs: dict = {}
    if config.faq_backend == "encoder":
        if config.checkpoint is None:
            raise StartupError("faq_backend 'encoder' requires a checkpoint path")
        from ..crossmodal import EncoderTextBackend
        try:
            backend_kwargs["backend_factory"] = EncoderTextBackend.factory(
                config.checkpoint
            )
        except (OSError, ValueError) as exc:
            raise loading("checkpoint", config.checkpoint)(exc) from None
    try:
        faq_store = FaqStore.load(config.faq, **backend_kwargs)
    except (ValueError, OSError) as exc:
        raise loading("FAQ store", config.faq)(exc) from None

    templates: dict[str, str] = {}
    if config.templates is not None:
        try:
            templates = _load_templates(config.templates)
        except (ValueError, OSError) as exc:
            raise loading("templates", config.templates)(exc) from None

    engine = Engine(
        kg, search_lexicon, property_lexicon, faq_store, templates,
        EngineConfig(
            rules=config.rules,
            weights=config.weights,
            theta=config.theta,
            default_reply=config.default_reply,
            top_k=config.top_k,
        ),
    )
    sessions = SessionTable(config.session_ttl_seconds)
    return AppState(config, kg, engine, sessions, config.images_dir)
