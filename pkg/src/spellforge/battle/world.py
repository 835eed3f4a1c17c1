"""Deterministic headless battle world.

Entities are ids; components are data stores keyed by component name;
systems run in a fixed order each tick. Kinematics use integer sub-unit
fixed point (3600 subunits per world unit) so that per-tick increments
at dt = 1/60 s are exact and traces are reproducible bit for bit.
Positions surface as floats only in trace payloads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from spellforge.assets import data_json
from spellforge.dsl import SpellComponent, SpellScript
from spellforge.rng import Stream

from .trace import Event, EventTrace

DT = 1.0 / 60.0
SUB = 3600  # subunits per world unit; speed*60 and gravity are exact ints
TICKS_PER_SECOND = 60

CASTER_RADIUS = 2.0
CASTER_MAX_HEALTH = 100.0
MANA_REGEN_PER_SECOND = 0.1
DEFAULT_LIFETIME_TICKS = 600  # 10 s for classes without a duration param
BEAM_LIFETIME_TICKS = 30
MULTI_CAST_SPREAD_DEGREES = 10.0

TRIGGER_KINDS = ("timerTrigger", "buttonTrigger", "impactTrigger", "deathTrigger")


def to_sub(units: float) -> int:
    return round(units * SUB)


def to_units(sub: int) -> float:
    return sub / SUB


def ticks_for(seconds: float) -> int:
    return max(1, round(seconds * TICKS_PER_SECOND))


@dataclass
class CasterState:
    x: float
    y: float
    team: str
    health: float = CASTER_MAX_HEALTH
    mana: float = 1.0

    def clamp(self) -> None:
        self.health = min(max(self.health, 0.0), CASTER_MAX_HEALTH)
        self.mana = min(max(self.mana, 0.0), 1.0)


@dataclass
class Scenario:
    name: str
    width: int
    height: int
    heights: list[float]
    casters: list[dict]


def load_scenario(name: str) -> Scenario:
    fixtures = data_json("scenarios.json")
    if name not in fixtures:
        raise KeyError(f"unknown scenario {name!r}; shipped: {sorted(fixtures)}")
    doc = fixtures[name]
    terrain = doc["terrain"]
    heights = [float(terrain["height"])] * doc["width"]
    for wall in terrain.get("walls", []):
        for x in range(wall["from"], min(wall["to"], doc["width"])):
            heights[x] = float(wall["height"])
    return Scenario(
        name=name,
        width=doc["width"],
        height=doc["height"],
        heights=heights,
        casters=doc["casters"],
    )


class World:
    """One battle simulation. Strictly single-threaded."""

    def __init__(self, scenario: Scenario, seed: int):
        self.scenario = scenario
        self.tick = 0
        self.rng = Stream(seed, 0xBA77)
        self.trace = EventTrace()
        self.casters: list[CasterState] = [
            CasterState(x=float(c["x"]), y=self.terrain_height(float(c["x"])) + CASTER_RADIUS, team=c["team"])
            for c in scenario.casters
        ]
        self._next_id = 0
        self.entities: set[int] = set()
        # component name -> entity id -> data
        self.stores: dict[str, dict[int, Any]] = {}

    @classmethod
    def from_scenario(cls, name: str, seed: int) -> "World":
        return cls(load_scenario(name), seed)

    # -- store plumbing ------------------------------------------------

    def store(self, name: str) -> dict[int, Any]:
        return self.stores.setdefault(name, {})

    def add(self, eid: int, name: str, value: Any) -> None:
        self.store(name)[eid] = value

    def get(self, eid: int, name: str, default=None):
        return self.stores.get(name, {}).get(eid, default)

    def has(self, eid: int, name: str) -> bool:
        return eid in self.stores.get(name, {})

    def components_of(self, eid: int) -> set[str]:
        return {name for name, store in self.stores.items() if eid in store}

    def remove_entity(self, eid: int) -> None:
        for store in self.stores.values():
            store.pop(eid, None)
        self.entities.discard(eid)

    def new_entity(self) -> int:
        eid = self._next_id
        self._next_id += 1
        self.entities.add(eid)
        return eid

    # -- terrain and events --------------------------------------------

    def terrain_height(self, x: float) -> float:
        i = min(max(int(x), 0), self.scenario.width - 1)
        return self.scenario.heights[i]

    def emit(self, event_kind: str, eid: int, **payload) -> None:
        self.trace.append(Event(self.tick, event_kind, eid, payload))

    def pos_of(self, eid: int) -> tuple[int, int]:
        return self.get(eid, "pos")

    def live_count(self) -> int:
        return len(self.entities)


def _class_of(components: list[SpellComponent]) -> SpellComponent | None:
    for comp in components:
        if comp.is_class:
            return comp
    return None


def _angle_velocity(speed: float, degrees: float, facing: int) -> tuple[int, int]:
    theta = math.radians(degrees)
    vx = round(speed * TICKS_PER_SECOND * math.cos(theta)) * facing
    vy = round(speed * TICKS_PER_SECOND * math.sin(theta))
    return vx, vy


def instantiate(script: SpellScript, caster: CasterState, world: World) -> list[int]:
    """Create ``count`` entities for a validated script.

    Insufficient mana creates nothing and appends a fizzle event.
    """
    caster_index = world.casters.index(caster)
    cost = sum(c.params.get("cost", 0.0) for c in script.components if c.component_type == "manaCost")
    if caster.mana < cost:
        world.emit("fizzle", -1, reason="mana", required=cost)
        return []
    caster.mana -= cost
    origin = (to_sub(caster.x), to_sub(caster.y))
    ids = []
    for i in range(script.count):
        spread = (i - (script.count - 1) / 2.0) * MULTI_CAST_SPREAD_DEGREES
        eid = _spawn_components(script.components, caster_index, origin, world, angle_offset=spread)
        if eid is not None:
            ids.append(eid)
    return ids


def _spawn_components(
    components: list[SpellComponent],
    caster_index: int,
    origin: tuple[int, int],
    world: World,
    angle_offset: float = 0.0,
) -> int | None:
    """One entity holding exactly the given components. Returns None and
    emits a fizzle event when no class component is present."""
    klass = _class_of(components)
    if klass is None:
        world.emit("fizzle", -1, reason="empty-payload")
        return None

    eid = world.new_entity()
    for comp in components:
        if comp.is_trigger:
            world.add(eid, comp.component_type, {"params": dict(comp.params), "payload": comp.payload_components})
        else:
            world.add(eid, comp.component_type, dict(comp.params))

    world.add(eid, "owner", caster_index)
    world.add(eid, "pos", origin)

    caster = world.casters[caster_index]
    opponents = [c for c in world.casters if c.team != caster.team]
    facing = 1
    if opponents:
        nearest = min(opponents, key=lambda c: abs(c.x - to_units(origin[0])))
        facing = 1 if nearest.x >= to_units(origin[0]) else -1
    world.add(eid, "facing", facing)

    angle = world.get(eid, "spawnAngle", {}).get("degrees", 0.0) + angle_offset
    ctype = klass.component_type
    lifetime = DEFAULT_LIFETIME_TICKS

    if ctype == "projectile":
        speed = klass.params.get("speed", 15.0)
        world.add(eid, "vel", _angle_velocity(speed, angle, facing))
        world.add(eid, "gravity", round(klass.params.get("gravity", 0.0)))
    elif ctype == "wallCrawl":
        speed = klass.params.get("speed", 5.0)
        world.add(eid, "vel", (round(speed * TICKS_PER_SECOND) * facing, 0))
        world.add(eid, "crawler", True)
    elif ctype == "aoe":
        lifetime = ticks_for(klass.params.get("duration", 1.0))
    elif ctype == "shield":
        lifetime = ticks_for(klass.params.get("duration", 3.0))
    elif ctype == "beam":
        lifetime = BEAM_LIFETIME_TICKS
    elif ctype == "teleportCaster":
        target = world.casters[caster_index]
        target.x = to_units(origin[0])
        target.y = max(to_units(origin[1]), world.terrain_height(target.x) + CASTER_RADIUS)
        lifetime = 1
    world.add(eid, "lifetime", lifetime)
    world.add(eid, "born", world.tick)
    world.add(eid, "class", ctype)

    if world.has(eid, "timerTrigger"):
        delay = world.get(eid, "timerTrigger")["params"].get("delay", 1.0)
        world.add(eid, "timer", ticks_for(delay))

    world.emit(
        "spawn",
        eid,
        **{"class": ctype, "x": to_units(origin[0]), "y": to_units(origin[1])},
    )
    if ctype == "teleportCaster":
        world.emit("teleport", eid, caster=caster_index, x=world.casters[caster_index].x, y=world.casters[caster_index].y)
    return eid


def fire_trigger(world: World, eid: int, trigger_kind: str) -> list[int]:
    """Instantiate a trigger's payload as a fresh sub-spell at the
    entity's position. Nothing is inherited from the parent."""
    if trigger_kind not in TRIGGER_KINDS or not world.has(eid, trigger_kind):
        raise ValueError(f"entity {eid} holds no {trigger_kind!r}")
    trigger = world.get(eid, trigger_kind)
    world.emit("trigger_fired", eid, kind=trigger_kind)
    pos = world.pos_of(eid)
    owner = world.get(eid, "owner", 0)
    spawned = _spawn_components(trigger["payload"], owner, pos, world)
    return [spawned] if spawned is not None else []


def step(world: World) -> World:
    """Advance one fixed timestep. System order is fixed:
    input -> timers -> steering -> integration -> collision -> triggers
    -> damage -> expiry -> caster upkeep."""
    world.tick += 1
    dying: dict[int, str] = {}
    impact_queue: list[int] = []

    # input/controllable: headless worlds receive no player input; the
    # button trigger is fired through fire_trigger by the embedding layer.

    # timers
    timer_store = world.store("timer")
    for eid in sorted(timer_store):
        timer_store[eid] -= 1
        if timer_store[eid] <= 0:
            del timer_store[eid]
            fire_trigger(world, eid, "timerTrigger")

    # steering: homing, then boomerang
    vel_store = world.store("vel")
    for eid in sorted(world.store("homing")):
        if eid not in vel_store:
            continue
        strength = world.get(eid, "homing").get("strength", 0.5)
        owner = world.get(eid, "owner", 0)
        team = world.casters[owner].team
        targets = [c for c in world.casters if c.team != team]
        if not targets:
            continue
        px, py = world.pos_of(eid)
        target = min(targets, key=lambda c: (to_sub(c.x) - px) ** 2 + (to_sub(c.y) - py) ** 2)
        dx, dy = to_sub(target.x) - px, to_sub(target.y) - py
        norm = math.hypot(dx, dy)
        if norm == 0:
            continue
        vx, vy = vel_store[eid]
        speed = math.hypot(vx, vy)
        desired = (dx / norm * speed, dy / norm * speed)
        vel_store[eid] = (
            round(vx + strength * (desired[0] - vx)),
            round(vy + strength * (desired[1] - vy)),
        )
    boom_store = world.store("boomerang")
    for eid in sorted(boom_store):
        state = boom_store[eid]
        if eid not in vel_store or state.get("reversed"):
            continue
        if world.get(eid, "gravity", 0) > 0 and vel_store[eid][1] <= 0:
            vx, vy = vel_store[eid]
            vel_store[eid] = (-vx, vy)
            state["reversed"] = True

    # integration: semi-implicit Euler in integer subunits
    pos_store = world.store("pos")
    for eid in sorted(vel_store):
        if eid not in pos_store:
            continue
        vx, vy = vel_store[eid]
        g = world.get(eid, "gravity", 0)
        if g:
            vy -= g
            vel_store[eid] = (vx, vy)
        x, y = pos_store[eid]
        nx, ny = x + vx, y + vy
        if world.get(eid, "crawler"):
            ny = to_sub(world.terrain_height(to_units(nx)))
        if (nx, ny) != (x, y):
            pos_store[eid] = (nx, ny)
            world.emit("move", eid, x=to_units(nx), y=to_units(ny))

    # collision: terrain and opposing casters stop moving entities
    for eid in sorted(vel_store):
        if eid not in pos_store or eid in dying:
            continue
        x, y = pos_store[eid]
        ux, uy = to_units(x), to_units(y)
        if not (-10 <= ux <= world.scenario.width + 10) or not (-10 <= uy <= world.scenario.height * 2):
            dying[eid] = "out-of-bounds"
            continue
        if not world.get(eid, "crawler") and uy <= world.terrain_height(ux):
            world.emit("impact", eid, target="terrain", x=ux, y=uy)
            dying[eid] = "impact"
            if world.has(eid, "impactTrigger"):
                impact_queue.append(eid)
            continue
        radius = world.get(eid, "projectile", {}).get("radius", 1)
        owner = world.get(eid, "owner", 0)
        team = world.casters[owner].team
        for ci, caster in enumerate(world.casters):
            if caster.team == team or caster.health <= 0:
                continue
            reach = to_sub(radius + CASTER_RADIUS)
            if (to_sub(caster.x) - x) ** 2 + (to_sub(caster.y) - y) ** 2 <= reach * reach:
                world.emit("impact", eid, target="caster", caster=ci, x=ux, y=uy)
                dying[eid] = "impact"
                if world.has(eid, "impactTrigger"):
                    impact_queue.append(eid)
                break

    # triggers: impact payloads fire after all collisions resolve
    for eid in impact_queue:
        fire_trigger(world, eid, "impactTrigger")

    # damage: area effects accumulate damage per tick
    for eid in sorted(world.store("aoe")):
        if world.get(eid, "born") == world.tick:
            continue
        params = world.get(eid, "aoe")
        damage = params.get("damage", 0.0)
        if damage <= 0 or eid not in pos_store:
            continue
        duration_ticks = ticks_for(params.get("duration", 1.0))
        per_tick = damage / duration_ticks
        radius_sub = to_sub(params.get("radius", 3.0))
        x, y = pos_store[eid]
        owner = world.get(eid, "owner", 0)
        team = world.casters[owner].team
        for ci, caster in enumerate(world.casters):
            if caster.team == team or caster.health <= 0:
                continue
            if (to_sub(caster.x) - x) ** 2 + (to_sub(caster.y) - y) ** 2 <= radius_sub * radius_sub:
                caster.health -= per_tick
                caster.clamp()
                world.emit("damage", eid, caster=ci, amount=per_tick)

    # expiry: lifetimes run out, impacts finalize, death triggers fire
    lifetime_store = world.store("lifetime")
    for eid in sorted(lifetime_store):
        if world.get(eid, "born") == world.tick:
            continue  # spawned this step; first full tick is the next one
        lifetime_store[eid] -= 1
        if lifetime_store[eid] <= 0 and eid not in dying:
            dying[eid] = "lifetime"
    for eid in sorted(dying):
        if world.has(eid, "deathTrigger"):
            fire_trigger(world, eid, "deathTrigger")
        world.emit("expire", eid, reason=dying[eid])
        world.remove_entity(eid)

    # caster upkeep: regeneration is the only mana income
    for caster in world.casters:
        caster.mana += MANA_REGEN_PER_SECOND * DT
        caster.clamp()
    return world


def run_scenario(script: SpellScript, scenario: str, seed: int, max_ticks: int = 600) -> EventTrace:
    """Batch execution: instantiate for the first caster and step until
    the world is quiet or the tick budget runs out. Fully deterministic."""
    world = World.from_scenario(scenario, seed)
    instantiate(script, world.casters[0], world)
    while world.tick < max_ticks and world.live_count() > 0:
        step(world)
    return world.trace
