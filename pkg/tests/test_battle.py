from __future__ import annotations

import hashlib
import json
import pathlib

import pytest

from spellforge.battle import (
    CASTER_RADIUS,
    World,
    fire_trigger,
    instantiate,
    run_scenario,
    step,
    to_units,
)
from spellforge.dsl import fizzle, parse_spell
from tests.conftest import ELEMENTS

DATA = pathlib.Path(__file__).parent / "data"


def spell(doc: dict):
    script, report = parse_spell(json.dumps(doc), ELEMENTS)
    assert report.outcome == "accepted", report.to_dict()
    return script


def projectile_doc(**params):
    merged = {"radius": 1, "speed": 10, "gravity": 0}
    merged.update(params)
    return {
        "friendlyName": "Test Bolt",
        "components": [dict({"componentType": "projectile"}, **merged)],
    }


class TestInstantiate:
    def test_wind_scout_components(self, wind_scout_canonical):
        script, _ = parse_spell(wind_scout_canonical, ELEMENTS)
        world = World.from_scenario("duel", 1)
        ids = instantiate(script, world.casters[0], world)
        assert len(ids) == 1
        comps = world.components_of(ids[0])
        assert {"projectile", "element", "controllable", "buttonTrigger"} <= comps

    def test_count_multiplicity(self):
        doc = projectile_doc()
        doc["count"] = 3
        world = World.from_scenario("duel", 1)
        ids = instantiate(spell(doc), world.casters[0], world)
        assert len(ids) == 3
        assert len(set(ids)) == 3
        assert len(world.trace.of_kind("spawn")) == 3

    def test_insufficient_mana_fizzles(self):
        doc = {
            "friendlyName": "Greedy Nova",
            "components": [
                {"componentType": "aoe", "radius": 3, "duration": 1, "damage": 10},
                {"componentType": "manaCost", "cost": 0.5},
            ],
        }
        world = World.from_scenario("duel", 1)
        world.casters[0].mana = 0.0
        ids = instantiate(spell(doc), world.casters[0], world)
        assert ids == []
        assert len(world.trace.of_kind("fizzle")) == 1
        assert world.trace.of_kind("fizzle")[0].payload["reason"] == "mana"

    def test_entity_ids_never_reused(self):
        world = World.from_scenario("duel", 1)
        first = instantiate(spell(projectile_doc()), world.casters[0], world)
        for _ in range(300):
            step(world)
        second = instantiate(spell(projectile_doc()), world.casters[0], world)
        assert set(first).isdisjoint(second)


class TestKinematics:
    def test_straight_line_displacement_exact(self):
        world = World.from_scenario("void", 9)
        (eid,) = instantiate(spell(projectile_doc(speed=10)), world.casters[0], world)
        x0, y0 = world.pos_of(eid)
        for _ in range(60):
            step(world)
        x1, y1 = world.pos_of(eid)
        assert to_units(x1 - x0) == 10.0
        assert y1 == y0

    def test_gravity_drop_within_euler_bound(self):
        g, t = 10.0, 1.0
        world = World.from_scenario("void", 9)
        world.casters[0].y = 60.0
        (eid,) = instantiate(spell(projectile_doc(speed=10, gravity=g)), world.casters[0], world)
        _, y0 = world.pos_of(eid)
        for _ in range(60):
            step(world)
        _, y1 = world.pos_of(eid)
        drop = to_units(y0 - y1)
        bound = 0.5 * g * (1.0 / 60.0) * t
        assert abs(drop - 0.5 * g * t * t) <= bound + 1e-12

    def test_timer_fires_at_tick_30(self):
        doc = {
            "friendlyName": "Delay Pop",
            "components": [
                {"componentType": "aoe", "radius": 2, "duration": 2, "damage": 0},
                {
                    "componentType": "timerTrigger",
                    "delay": 0.5,
                    "payload_components": [{"componentType": "shield", "radius": 2, "duration": 0.5}],
                },
            ],
        }
        trace = run_scenario(spell(doc), "duel", seed=3)
        fired = trace.of_kind("trigger_fired")
        assert len(fired) == 1
        assert fired[0].tick == 30

    def test_boomerang_reverses_at_apex(self):
        doc = {
            "friendlyName": "Return Arc",
            "components": [
                {"componentType": "projectile", "radius": 1, "speed": 10, "gravity": 5},
                {"componentType": "boomerang"},
                {"componentType": "spawnAngle", "degrees": 60},
            ],
        }
        world = World.from_scenario("void", 9)
        world.casters[0].y = 50.0
        (eid,) = instantiate(spell(doc), world.casters[0], world)
        vx0 = world.store("vel")[eid][0]
        for _ in range(120):
            step(world)
            if eid not in world.entities:
                break
            if world.store("vel")[eid][0] == -vx0:
                break
        assert world.store("vel").get(eid, (0, 0))[0] == -vx0


class TestTriggers:
    def test_button_trigger_teleports_caster(self, wind_scout_canonical):
        script, _ = parse_spell(wind_scout_canonical, ELEMENTS)
        world = World.from_scenario("duel", 42)
        (eid,) = instantiate(script, world.casters[0], world)
        for _ in range(30):
            step(world)
        px, py = world.pos_of(eid)
        fire_trigger(world, eid, "buttonTrigger")
        assert world.casters[0].x == to_units(px)
        teleports = world.trace.of_kind("teleport")
        assert len(teleports) == 1
        assert teleports[0].payload["caster"] == 0

    def test_trigger_fired_followed_by_spawn_same_tick(self):
        doc = {
            "friendlyName": "Chain Pop",
            "components": [
                {"componentType": "projectile", "radius": 1, "speed": 10, "gravity": 0},
                {
                    "componentType": "timerTrigger",
                    "delay": 0.2,
                    "payload_components": [{"componentType": "aoe", "radius": 2, "duration": 0.2, "damage": 0}],
                },
            ],
        }
        trace = run_scenario(spell(doc), "void", seed=1)
        for fired in trace.of_kind("trigger_fired"):
            same_tick = [e for e in trace if e.tick == fired.tick and e.event_kind in ("spawn", "fizzle")]
            assert same_tick, f"no spawn/fizzle after trigger at tick {fired.tick}"

    def test_aoe_payload_damages_casters_in_radius(self):
        # Park an aoe right on the opposing caster via a homing carrier.
        doc = {
            "friendlyName": "Seeker Burst",
            "components": [
                {"componentType": "projectile", "radius": 1, "speed": 25, "gravity": 0},
                {"componentType": "homing", "strength": 1},
                {
                    "componentType": "impactTrigger",
                    "payload_components": [{"componentType": "aoe", "radius": 5, "duration": 1, "damage": 10}],
                },
            ],
        }
        world = World.from_scenario("duel", 7)
        instantiate(spell(doc), world.casters[0], world)
        for _ in range(600):
            step(world)
            if world.live_count() == 0:
                break
        damage = world.trace.of_kind("damage")
        assert damage, "aoe payload dealt no damage"
        total = sum(e.payload["amount"] for e in damage)
        assert total == pytest.approx(10.0, rel=1e-6)
        assert world.casters[1].health == pytest.approx(90.0, rel=1e-6)

    def test_nested_chain_depth_three_no_inheritance(self):
        doc = {
            "friendlyName": "Matryoshka Bomb",
            "components": [
                {"componentType": "projectile", "radius": 1, "speed": 5, "gravity": 0},
                {"componentType": "element", "element": "fire"},
                {
                    "componentType": "timerTrigger",
                    "delay": 0.2,
                    "payload_components": [
                        {"componentType": "aoe", "radius": 2, "duration": 0.3, "damage": 0},
                        {
                            "componentType": "timerTrigger",
                            "delay": 0.2,
                            "payload_components": [
                                {"componentType": "shield", "radius": 2, "duration": 0.5},
                                {
                                    "componentType": "timerTrigger",
                                    "delay": 0.2,
                                    "payload_components": [{"componentType": "manifestation", "shape": "orb", "size": 2}],
                                },
                            ],
                        },
                    ],
                },
            ],
        }
        world = World.from_scenario("void", 11)
        instantiate(spell(doc), world.casters[0], world)
        for _ in range(120):
            step(world)
        spawns = world.trace.of_kind("spawn")
        assert [e.payload["class"] for e in spawns] == ["projectile", "aoe", "shield", "manifestation"]
        # generation 2 (aoe) declared no element: none may be present
        aoe_eid = spawns[1].entity_id
        assert not world.has(aoe_eid, "element") or aoe_eid not in world.store("element")

    def test_payload_missing_class_fizzles_payload_only(self):
        world = World.from_scenario("duel", 5)
        (eid,) = instantiate(spell(projectile_doc()), world.casters[0], world)
        world.add(eid, "buttonTrigger", {"params": {}, "payload": []})
        spawned = fire_trigger(world, eid, "buttonTrigger")
        assert spawned == []
        assert world.trace.of_kind("fizzle")[-1].payload["reason"] == "empty-payload"
        assert eid in world.entities  # parent unaffected


class TestInvariants:
    def test_determinism_byte_identical_traces(self, wind_scout_canonical):
        script, _ = parse_spell(wind_scout_canonical, ELEMENTS)
        a = run_scenario(script, "duel", seed=123).to_jsonl()
        b = run_scenario(script, "duel", seed=123).to_jsonl()
        assert a == b

    def test_fizzle_harmless_across_seeds_and_scenarios(self):
        for scenario in ("duel", "walled", "void"):
            for seed in range(10):
                trace = run_scenario(fizzle(), scenario, seed=seed)
                assert trace.of_kind("damage") == []
                assert len(trace.of_kind("spawn")) == 1
                assert len(trace.of_kind("expire")) == 1

    def test_mana_regen_only_income(self):
        world = World.from_scenario("duel", 1)
        world.casters[0].mana = 0.4
        last = world.casters[0].mana
        for _ in range(120):
            step(world)
            now = world.casters[0].mana
            assert now >= last  # regeneration only; nothing else changes mana here
            assert 0.0 <= now <= 1.0
            last = now

    def test_class_exclusivity_live_entities(self, wind_scout_canonical):
        from spellforge.dsl import CLASS_COMPONENTS

        script, _ = parse_spell(wind_scout_canonical, ELEMENTS)
        world = World.from_scenario("duel", 2)
        instantiate(script, world.casters[0], world)
        for _ in range(50):
            step(world)
            for eid in world.entities:
                held = [c for c in CLASS_COMPONENTS if world.has(eid, c)]
                assert len(held) == 1

    def test_homing_regression_fixture(self):
        fix = json.loads((DATA / "homing_regression.json").read_text())
        script, report = parse_spell(fix["script_raw"], ELEMENTS)
        assert report.outcome == "accepted"
        trace = run_scenario(script, fix["scenario"], seed=fix["seed"])
        digest = hashlib.sha256(trace.to_jsonl().encode()).hexdigest()
        assert digest == fix["trace_sha256"]
        impact = trace.of_kind("impact")[0]
        assert impact.tick == fix["impact_tick"]
        assert impact.payload["target"] == fix["impact_target"]
        assert impact.tick < 600

    def test_trace_ticks_nondecreasing(self, wind_scout_canonical):
        script, _ = parse_spell(wind_scout_canonical, ELEMENTS)
        trace = run_scenario(script, "walled", seed=6)
        ticks = [e.tick for e in trace]
        assert ticks == sorted(ticks)

    def test_unknown_scenario_rejected(self):
        with pytest.raises(KeyError):
            World.from_scenario("volcano", 1)
