"""Deterministic ECS battle runtime for spell scripts."""

from .trace import EVENT_KINDS, Event, EventTrace
from .world import (
    CASTER_RADIUS,
    DT,
    SUB,
    CasterState,
    Scenario,
    World,
    fire_trigger,
    instantiate,
    load_scenario,
    run_scenario,
    step,
    to_sub,
    to_units,
)

__all__ = [
    "CASTER_RADIUS",
    "CasterState",
    "DT",
    "EVENT_KINDS",
    "Event",
    "EventTrace",
    "Scenario",
    "SUB",
    "World",
    "fire_trigger",
    "instantiate",
    "load_scenario",
    "run_scenario",
    "step",
    "to_sub",
    "to_units",
]
