"""Service configuration: one JSON file, paths relative to it."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..qa.engine import DEFAULT_REPLY
from ..qa.intent import IntentRules
from ..retrieval import ScoreWeights


class ConfigError(ValueError):
    """A config file that cannot be used."""


_REQUIRED = ("kg", "search_lexicon", "property_lexicon", "faq")
_KNOWN = {
    *_REQUIRED, "listen", "templates", "images_dir", "checkpoint", "index",
    "theta", "default_reply", "weights", "view_triggers", "question_markers",
    "top_k", "session_ttl_seconds", "faq_backend",
}


@dataclass(frozen=True)
class ServiceConfig:
    kg: Path
    search_lexicon: Path
    property_lexicon: Path
    faq: Path
    templates: Path | None = None
    images_dir: Path | None = None
    listen: str = "127.0.0.1:8080"
    checkpoint: Path | None = None
    index: Path | None = None
    theta: float = 0.3
    default_reply: str = DEFAULT_REPLY
    weights: ScoreWeights = field(default_factory=ScoreWeights)
    rules: IntentRules = field(default_factory=IntentRules)
    top_k: int = 10
    session_ttl_seconds: float = 1800.0
    faq_backend: str = "tfidf"

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta <= 1.0:
            raise ConfigError(f"theta must be in [0, 1], got {self.theta}")
        if self.top_k < 1:
            raise ConfigError(f"top_k must be >= 1, got {self.top_k}")
        if self.session_ttl_seconds <= 0:
            raise ConfigError("session_ttl_seconds must be positive")
        if self.faq_backend not in ("tfidf", "encoder"):
            raise ConfigError(f"unknown faq_backend {self.faq_backend!r}")

    @property
    def host_port(self) -> tuple[str, int]:
        host, _, port = self.listen.rpartition(":")
        if not host or not port.isdigit():
            raise ConfigError(f"listen must be host:port, got {self.listen!r}")
        return host, int(port)

    @classmethod
    def from_file(cls, path: str | Path) -> "ServiceConfig":
        path = Path(path)
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(raw) - _KNOWN
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        missing = [key for key in _REQUIRED if key not in raw]
        if missing:
            raise ConfigError(f"missing config keys: {missing}")

        base = path.parent

        def resolve(key: str) -> Path | None:
            value = raw.get(key)
            return (base / value) if value is not None else None

        kwargs: dict = {key: resolve(key) for key in _REQUIRED}
        for key in ("templates", "checkpoint", "index", "images_dir"):
            kwargs[key] = resolve(key)
        if kwargs["images_dir"] is None:
            kwargs["images_dir"] = base
        for key in ("listen", "theta", "default_reply", "top_k",
                    "session_ttl_seconds", "faq_backend"):
            if key in raw:
                kwargs[key] = raw[key]
        try:
            if "weights" in raw:
                kwargs["weights"] = ScoreWeights(**raw["weights"])
            triggers = raw.get("view_triggers")
            markers = raw.get("question_markers")
            if triggers is not None or markers is not None:
                defaults = IntentRules()
                kwargs["rules"] = IntentRules(
                    view_triggers=tuple(triggers) if triggers is not None
                    else defaults.view_triggers,
                    question_markers=tuple(markers) if markers is not None
                    else defaults.question_markers,
                )
            return cls(**kwargs)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad config {path}: {exc}") from None
