"""Component and node registries for both DSLs.

The registry is shipped as a machine-readable JSON file (also embedded in
prompts) and loaded once at import. Everything the validator needs to
know about a component or node lives here: category, parameter types,
ranges, defaults.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any

COMPASS_8 = ("north", "northeast", "east", "southeast", "south", "southwest", "west", "northwest")
SELF = "self"
DIRECTIONS = COMPASS_8 + (SELF,)
COMPARISONS = ("lt", "le", "eq", "ge", "gt")

TRIGGER_TYPES = ("timerTrigger", "buttonTrigger", "impactTrigger", "deathTrigger")


@dataclass(frozen=True)
class ParamSpec:
    name: str
    type: str  # int | float | enum | element | color | direction | comparison | material | materials
    min: float | None = None
    max: float | None = None
    default: Any = None
    options: tuple[str, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class ComponentSpec:
    name: str
    category: str  # class | property | modifier | trigger
    params: dict[str, ParamSpec]

    @property
    def is_class(self) -> bool:
        return self.category == "class"

    @property
    def is_trigger(self) -> bool:
        return self.category == "trigger"


@dataclass(frozen=True)
class NodeSpec:
    name: str
    category: str  # wrapper | conditional | executor
    fields: dict[str, ParamSpec]
    nested_actions: bool = False

    @property
    def takes_actions(self) -> bool:
        """Whether this node carries a nested actions list."""
        return self.category in ("wrapper", "conditional") or self.nested_actions


def _param(name: str, raw: dict) -> ParamSpec:
    return ParamSpec(
        name=name,
        type=raw["type"],
        min=raw.get("min"),
        max=raw.get("max"),
        default=raw.get("default"),
        options=tuple(raw.get("options", ())),
    )


def _load() -> tuple[dict[str, ComponentSpec], dict[str, NodeSpec], dict]:
    raw = json.loads(resources.files("spellforge.dsl").joinpath("registry.json").read_text("utf-8"))
    components = {
        name: ComponentSpec(
            name=name,
            category=spec["category"],
            params={p: _param(p, ps) for p, ps in spec["params"].items()},
        )
        for name, spec in raw["spell_components"].items()
    }
    nodes = {
        name: NodeSpec(
            name=name,
            category=spec["category"],
            fields={p: _param(p, ps) for p, ps in spec.get("fields", {}).items()},
            nested_actions=spec.get("nested_actions", False),
        )
        for name, spec in raw["automata_nodes"].items()
    }
    return components, nodes, raw


SPELL_COMPONENTS, AUTOMATA_NODES, RAW_REGISTRY = _load()

CLASS_COMPONENTS = tuple(n for n, s in SPELL_COMPONENTS.items() if s.is_class)
PROPERTY_COMPONENTS = tuple(n for n, s in SPELL_COMPONENTS.items() if s.category == "property")
MODIFIER_COMPONENTS = tuple(n for n, s in SPELL_COMPONENTS.items() if s.category == "modifier")

WRAPPER_NODES = tuple(n for n, s in AUTOMATA_NODES.items() if s.category == "wrapper")
CONDITIONAL_NODES = tuple(n for n, s in AUTOMATA_NODES.items() if s.category == "conditional")
EXECUTOR_NODES = tuple(n for n, s in AUTOMATA_NODES.items() if s.category == "executor")

MAX_RULE_DEPTH = 12
COUNT_MIN, COUNT_MAX = 1, 10


def registry_json() -> str:
    """The registry file verbatim, for embedding in prompts."""
    return resources.files("spellforge.dsl").joinpath("registry.json").read_text("utf-8")
