"""In-memory session state for the gateway.

Each session owns one runtime instance (battle world or sandbox grid),
its DSL grounding state, and a lock serializing every mutation. Sessions
expire after 30 idle minutes and ids are 128-bit random."""

from __future__ import annotations

import asyncio
import secrets
import time
from dataclasses import dataclass, field
from typing import Any

from spellforge.battle import World
from spellforge.metrics import ELEMENT_POOL
from spellforge.rng import Stream
from spellforge.sandbox import DEFAULT_HEIGHT, DEFAULT_WIDTH, Grid, MaterialRegistry

SESSION_TTL_SECONDS = 30 * 60
MODES = ("battle", "alchemy")


@dataclass
class Session:
    session_id: str
    mode: str
    provider_name: str
    provider: Any
    lock: asyncio.Lock = field(default_factory=asyncio.Lock)
    last_touch: float = field(default_factory=time.monotonic)
    # battle state
    world: World | None = None
    elements: list[str] = field(default_factory=lambda: list(ELEMENT_POOL))
    # alchemy state
    grid: Grid | None = None
    registry: MaterialRegistry | None = None
    rng: Stream | None = None

    def touch(self) -> None:
        self.last_touch = time.monotonic()

    @property
    def expired(self) -> bool:
        return time.monotonic() - self.last_touch > SESSION_TTL_SECONDS


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, Session] = {}

    def create(self, mode: str, provider_name: str, provider: Any, seed: int = 0) -> Session:
        session = Session(
            session_id=secrets.token_hex(16),
            mode=mode,
            provider_name=provider_name,
            provider=provider,
        )
        if mode == "battle":
            session.world = World.from_scenario("duel", seed)
        else:
            session.grid = Grid(DEFAULT_WIDTH, DEFAULT_HEIGHT)
            session.registry = MaterialRegistry()
            session.rng = Stream(seed, 0xA1C4)
        self._sessions[session.session_id] = session
        return session

    def get(self, session_id: str) -> Session | None:
        session = self._sessions.get(session_id)
        if session is None:
            return None
        if session.expired:
            del self._sessions[session_id]
            return None
        return session

    def drop(self, session_id: str) -> None:
        self._sessions.pop(session_id, None)

    def __len__(self) -> int:
        return len(self._sessions)
