"""Procedural generation of always-valid spell scripts.

Drives the round-trip experiment: sources are generated here, described
in natural language, and regenerated from the description. Scripts are
deterministic per seed and valid by construction (one class component
per nesting level, registry-ranged parameters, bounded trigger depth).
"""

from __future__ import annotations

from dataclasses import dataclass

from spellforge.dsl import (
    CLASS_COMPONENTS,
    SPELL_COMPONENTS,
    TRIGGER_TYPES,
    SpellComponent,
    SpellScript,
)
from spellforge.rng import Stream

ELEMENT_POOL = ("fire", "water", "wind", "earth", "lightning", "ice")

_ADJECTIVES = ("Ember", "Frost", "Gale", "Stone", "Void", "Radiant", "Storm", "Thorn", "Tide", "Arc")
_NOUNS = ("Bolt", "Ward", "Bloom", "Lance", "Veil", "Echo", "Surge", "Coil", "Shard", "Wisp")

_EXTRA_POOL = tuple(
    name for name, spec in SPELL_COMPONENTS.items() if spec.category in ("property", "modifier")
)


@dataclass(frozen=True)
class GenConfig:
    seed: int
    max_depth: int = 3
    components_min: int = 2
    components_max: int = 5
    trigger_probability: float = 0.35
    elements: tuple[str, ...] = ELEMENT_POOL

    def __post_init__(self):
        if self.max_depth < 0:
            raise ValueError("max_depth must be >= 0")
        if not 0.0 <= self.trigger_probability <= 1.0:
            raise ValueError("trigger_probability must be in [0, 1]")
        if not 1 <= self.components_min <= self.components_max:
            raise ValueError("bad components_per_level range")
        if not self.elements:
            raise ValueError("element pool must be non-empty")


def _sample_params(ctype: str, rng: Stream, elements: tuple[str, ...]) -> dict:
    params = {}
    for pname, pspec in SPELL_COMPONENTS[ctype].params.items():
        if pspec.type == "int":
            params[pname] = rng.randint(int(pspec.min), int(pspec.max))
        elif pspec.type == "float":
            params[pname] = round(rng.uniform(float(pspec.min), float(pspec.max)), 3)
        elif pspec.type == "enum":
            params[pname] = rng.choice(pspec.options)
        elif pspec.type == "element":
            params[pname] = rng.choice(elements)
        elif pspec.type == "color":
            params[pname] = "#%06X" % rng.below(1 << 24)
        else:
            raise AssertionError(f"unexpected param type in spell registry: {pspec.type}")
    return params


def _gen_level(config: GenConfig, rng: Stream, depth: int) -> list[SpellComponent]:
    total = rng.randint(config.components_min, config.components_max)
    klass = rng.choice(CLASS_COMPONENTS)
    components = [SpellComponent(klass, _sample_params(klass, rng, config.elements))]
    extras = list(_EXTRA_POOL)
    triggers = list(TRIGGER_TYPES)
    for _ in range(total - 1):
        use_trigger = (
            depth < config.max_depth
            and bool(triggers)
            and rng.random() < config.trigger_probability
        )
        if use_trigger:
            ctype = triggers.pop(rng.below(len(triggers)))
            params = _sample_params(ctype, rng, config.elements)
            payload = _gen_level(config, rng, depth + 1)
            components.append(SpellComponent(ctype, params, payload_components=payload))
        elif extras:
            ctype = extras.pop(rng.below(len(extras)))
            components.append(SpellComponent(ctype, _sample_params(ctype, rng, config.elements)))
    return components


def gen_random_script(config: GenConfig) -> SpellScript:
    rng = Stream(config.seed, 0x5C71)
    name = f"{rng.choice(_ADJECTIVES)} {rng.choice(_NOUNS)}"
    components = _gen_level(config, rng, depth=0)
    return SpellScript(friendly_name=name, count=1, components=components)
