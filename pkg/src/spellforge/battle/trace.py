"""Event traces: the observable output of a battle world.

Serialized as JSON lines with canonical key order so that identical runs
produce byte-identical artifacts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from spellforge.dsl import canonical_json

EVENT_KINDS = ("spawn", "move", "impact", "trigger_fired", "damage", "teleport", "expire", "fizzle")


@dataclass
class Event:
    tick: int
    event_kind: str
    entity_id: int
    payload: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "tick": self.tick,
            "event_kind": self.event_kind,
            "entity_id": self.entity_id,
            "payload": self.payload,
        }


@dataclass
class EventTrace:
    events: list[Event] = field(default_factory=list)

    def append(self, event: Event) -> None:
        if self.events and event.tick < self.events[-1].tick:
            raise ValueError("event ticks must be nondecreasing")
        self.events.append(event)

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def of_kind(self, kind: str) -> list[Event]:
        return [e for e in self.events if e.event_kind == kind]

    def since(self, index: int) -> list[Event]:
        return self.events[index:]

    def to_jsonl(self) -> str:
        return "\n".join(canonical_json(e.to_dict()) for e in self.events)
