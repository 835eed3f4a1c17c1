"""Action-tree evaluation over the grid.

Semantics mirror the material DSL contract: actions run sequentially;
wrapper nodes compose a sampled direction transform onto the current
one; do_swap moves the cell, runs its nested list from the new location,
and ends the cell's turn, aborting remaining siblings at every level.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from spellforge.dsl.registry import COMPASS_8, SELF
from spellforge.rng import Stream

from .grid import DEFAULT_ALPHA, Grid, scan_positions
from .materials import MaterialRegistry

CONTINUED = "continued"
TURN_ENDED = "turn_ended"

# Grid deltas per compass index; y grows downward so south is (0, +1).
_DELTAS = ((0, -1), (1, -1), (1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1))
_DIR_INDEX = {name: i for i, name in enumerate(COMPASS_8)}


@dataclass(frozen=True)
class DirectionTransform:
    """Element of the dihedral group on the 8 compass directions.

    Applied as rotate-then-mirror-then-flip; "self" is fixed by every
    transform. Compositions normalize back to this triple form.
    """

    rotation: int = 0  # multiples of 45 degrees, clockwise
    mirror_ew: bool = False
    flip_ns: bool = False

    def apply_index(self, i: int) -> int:
        j = (i + self.rotation) % 8
        if self.mirror_ew:
            j = (8 - j) % 8
        if self.flip_ns:
            j = (4 - j) % 8
        return j

    def apply(self, direction: str) -> str:
        if direction == SELF:
            return SELF
        return COMPASS_8[self.apply_index(_DIR_INDEX[direction])]

    def perm(self) -> tuple[int, ...]:
        return tuple(self.apply_index(i) for i in range(8))

    def compose(self, inner: "DirectionTransform") -> "DirectionTransform":
        """Transform equivalent to applying ``inner`` first, then self."""
        perm = tuple(self.apply_index(inner.apply_index(i)) for i in range(8))
        return _from_perm(perm)


IDENTITY = DirectionTransform()


def _from_perm(perm: tuple[int, ...]) -> DirectionTransform:
    rotation = perm[0]
    if perm == tuple((i + rotation) % 8 for i in range(8)):
        return DirectionTransform(rotation=rotation)
    rotation = (-perm[0]) % 8
    candidate = DirectionTransform(rotation=rotation, mirror_ew=True)
    if perm == candidate.perm():
        return candidate
    raise AssertionError(f"permutation {perm} is outside the dihedral group")


@dataclass
class TickReport:
    evaluated: int = 0
    swaps: int = 0
    spawns: int = 0
    type_sets: int = 0
    evaluated_positions: list[int] = field(default_factory=list)


class EvalContext:
    __slots__ = ("grid", "registry", "report", "moved", "x", "y", "rng")

    def __init__(self, grid, registry, report, moved, x, y, rng):
        self.grid = grid
        self.registry = registry
        self.report = report
        self.moved = moved
        self.x = x
        self.y = y
        self.rng = rng

    def neighbor(self, direction: str) -> tuple[int, int]:
        if direction == SELF:
            return self.x, self.y
        dx, dy = _DELTAS[_DIR_INDEX[direction]]
        return self.x + dx, self.y + dy


def _compare(op: str, left: float, right: float) -> bool:
    if op == "lt":
        return left < right
    if op == "le":
        return left <= right
    if op == "eq":
        return left == right
    if op == "ge":
        return left >= right
    return left > right


def eval_actions(ctx: EvalContext, actions, t: DirectionTransform) -> str:
    """Run one action list; returns whether the cell's turn ended."""
    for node in actions:
        outcome = _eval_node(ctx, node, t)
        if outcome == TURN_ENDED:
            return TURN_ENDED
    return CONTINUED


def _eval_node(ctx: EvalContext, node, t: DirectionTransform) -> str:
    kind = node.node_type
    grid: Grid = ctx.grid

    if kind == "in_rand_rotation":
        sampled = DirectionTransform(rotation=ctx.rng.below(8))
        return eval_actions(ctx, node.actions, t.compose(sampled))
    if kind == "in_rand_mirror":
        sampled = DirectionTransform(mirror_ew=ctx.rng.random() < 0.5)
        return eval_actions(ctx, node.actions, t.compose(sampled))
    if kind == "in_rand_flip":
        sampled = DirectionTransform(flip_ns=ctx.rng.random() < 0.5)
        return eval_actions(ctx, node.actions, t.compose(sampled))

    if kind == "if_neighbor_is":
        nx, ny = ctx.neighbor(t.apply(node.params["direction"]))
        if not grid.in_bounds(nx, ny):
            return CONTINUED
        if ctx.registry.name_of(grid.type_at(nx, ny)) in node.params["options"]:
            return eval_actions(ctx, node.actions, t)
        return CONTINUED
    if kind == "if_alpha":
        if _compare(node.params["comparison"], grid.alpha_at(ctx.x, ctx.y), node.params["value"]):
            return eval_actions(ctx, node.actions, t)
        return CONTINUED
    if kind == "if_neighbor_count":
        count = 0
        for dx, dy in _DELTAS:
            nx, ny = ctx.x + dx, ctx.y + dy
            if grid.in_bounds(nx, ny) and ctx.registry.name_of(grid.type_at(nx, ny)) in node.params["options"]:
                count += 1
        if _compare(node.params["comparison"], count, node.params["value"]):
            return eval_actions(ctx, node.actions, t)
        return CONTINUED
    if kind == "if_chance":
        if ctx.rng.random() < node.params["p"]:
            return eval_actions(ctx, node.actions, t)
        return CONTINUED
    if kind == "if_neighbor_alpha":
        nx, ny = ctx.neighbor(t.apply(node.params["direction"]))
        if not grid.in_bounds(nx, ny):
            return CONTINUED
        if _compare(node.params["comparison"], grid.alpha_at(nx, ny), node.params["value"]):
            return eval_actions(ctx, node.actions, t)
        return CONTINUED

    if kind == "do_swap":
        nx, ny = ctx.neighbor(t.apply(node.params["direction"]))
        if not grid.in_bounds(nx, ny):
            return CONTINUED  # out-of-bounds swap is a no-op, turn continues
        src = grid.index(ctx.x, ctx.y)
        dst = grid.index(nx, ny)
        grid.types[src], grid.types[dst] = grid.types[dst], grid.types[src]
        grid.alphas[src], grid.alphas[dst] = grid.alphas[dst], grid.alphas[src]
        ctx.moved[src] = True
        ctx.moved[dst] = True
        ctx.report.swaps += 1
        ctx.x, ctx.y = nx, ny
        eval_actions(ctx, node.actions, t)
        return TURN_ENDED
    if kind == "do_set_type":
        nx, ny = ctx.neighbor(t.apply(node.params["direction"]))
        if grid.in_bounds(nx, ny):
            grid.set_cell(nx, ny, ctx.registry.type_id(node.params["material"]), DEFAULT_ALPHA)
            ctx.moved[grid.index(nx, ny)] = True  # acts from next tick
            ctx.report.type_sets += 1
        return CONTINUED
    if kind == "do_spawn":
        nx, ny = ctx.neighbor(t.apply(node.params["direction"]))
        if grid.in_bounds(nx, ny) and grid.type_at(nx, ny) == 0:
            grid.set_cell(nx, ny, ctx.registry.type_id(node.params["material"]), DEFAULT_ALPHA)
            ctx.moved[grid.index(nx, ny)] = True
            ctx.report.spawns += 1
        return CONTINUED
    if kind == "do_copy_alpha":
        nx, ny = ctx.neighbor(t.apply(node.params["direction"]))
        if grid.in_bounds(nx, ny):
            grid.alphas[grid.index(ctx.x, ctx.y)] = grid.alpha_at(nx, ny)
        return CONTINUED
    if kind == "do_set_alpha":
        grid.alphas[grid.index(ctx.x, ctx.y)] = node.params["value"]
        return CONTINUED

    raise AssertionError(f"unknown node type {kind!r} reached the engine")


def tick(grid: Grid, registry: MaterialRegistry, rng: Stream) -> tuple[Grid, TickReport]:
    """Advance one step. Every non-air cell is visited once in scan
    order; cells moved into (or created) during the tick wait for the
    next one. Per-cell randomness is keyed by (tick, cell index) so scan
    order changes never perturb unrelated cells."""
    report = TickReport()
    moved = [False] * (grid.width * grid.height)
    current_tick = grid.tick_count
    for x, y in scan_positions(grid.width, grid.height):
        i = grid.index(x, y)
        if grid.types[i] == 0 or moved[i]:
            continue
        rule = registry.rule_for(grid.types[i])
        if rule is None:
            continue
        report.evaluated += 1
        report.evaluated_positions.append(i)
        cell_rng = rng.split(current_tick, i)
        ctx = EvalContext(grid, registry, report, moved, x, y, cell_rng)
        eval_actions(ctx, rule.actions, IDENTITY)
    grid.tick_count = current_tick + 1
    return grid, report


def run(grid: Grid, registry: MaterialRegistry, seed: int, ticks: int) -> list[TickReport]:
    base = Stream(seed)
    reports = []
    for _ in range(ticks):
        _, report = tick(grid, registry, base)
        reports.append(report)
    return reports
