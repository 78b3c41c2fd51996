"""In-memory session table with idle-time eviction."""

from __future__ import annotations

import threading
import time
import uuid
from typing import Callable

from ..qa import Session


class SessionTable:
    """Sessions vanish after ``ttl_seconds`` without being touched.

    The injectable clock keeps eviction testable without sleeping.
    """

    def __init__(self, ttl_seconds: float = 1800.0,
                 clock: Callable[[], float] = time.monotonic) -> None:
        if ttl_seconds <= 0:
            raise ValueError("ttl_seconds must be positive")
        self._ttl = ttl_seconds
        self._clock = clock
        self._guard = threading.Lock()
        self._sessions: dict[str, Session] = {}
        self._last_seen: dict[str, float] = {}
        self._locks: dict[str, threading.Lock] = {}

    def _purge(self, now: float) -> None:
        stale = [sid for sid, seen in self._last_seen.items()
                 if now - seen > self._ttl]
        for sid in stale:
            del self._sessions[sid], self._last_seen[sid], self._locks[sid]

    def ensure(self, session_id: str | None) -> Session:
        """Fetch or create; a None id gets a fresh generated one."""
        now = self._clock()
        with self._guard:
            self._purge(now)
            if session_id is None:
                session_id = uuid.uuid4().hex
            if session_id not in self._sessions:
                self._sessions[session_id] = Session(session_id)
                self._locks[session_id] = threading.Lock()
            self._last_seen[session_id] = now
            return self._sessions[session_id]

    def require(self, session_id: str) -> Session:
        """Fetch an existing live session; KeyError when absent or expired."""
        now = self._clock()
        with self._guard:
            self._purge(now)
            session = self._sessions[session_id]
            self._last_seen[session_id] = now
            return session

    def lock_for(self, session_id: str) -> threading.Lock:
        """Per-session lock serializing request handling for one session."""
        with self._guard:
            return self._locks[session_id]

    def __len__(self) -> int:
        with self._guard:
            self._purge(self._clock())
            return len(self._sessions)
