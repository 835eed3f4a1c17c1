"""Falling-sand cellular automata runtime."""

from .engine import (
    CONTINUED,
    IDENTITY,
    TURN_ENDED,
    DirectionTransform,
    EvalContext,
    TickReport,
    eval_actions,
    run,
    tick,
)
from .grid import DEFAULT_HEIGHT, DEFAULT_WIDTH, Grid, from_snapshot, grid_hash, scan_positions, snapshot
from .materials import MaterialRegistry

__all__ = [
    "CONTINUED",
    "DEFAULT_HEIGHT",
    "DEFAULT_WIDTH",
    "DirectionTransform",
    "EvalContext",
    "Grid",
    "IDENTITY",
    "MaterialRegistry",
    "TURN_ENDED",
    "TickReport",
    "eval_actions",
    "from_snapshot",
    "grid_hash",
    "run",
    "scan_positions",
    "snapshot",
    "tick",
]
