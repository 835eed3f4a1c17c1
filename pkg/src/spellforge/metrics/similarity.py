"""Component-set similarity and complexity profiling for spell scripts."""

from __future__ import annotations

from dataclasses import dataclass

from spellforge.dsl import SpellScript


@dataclass(frozen=True)
class ComplexityProfile:
    component_complexity: int  # every component object, nested payloads included
    nesting_complexity: int  # deepest trigger nesting, top level = 0


def component_names(script: SpellScript) -> set[str]:
    names: set[str] = set()

    def walk(components):
        for c in components:
            names.add(c.component_type)
            walk(c.payload_components)

    walk(script.components)
    return names


def jaccard_components(a: SpellScript, b: SpellScript) -> float:
    """Intersection over union of component type names, collected
    recursively through trigger payloads. Two empty sets score 1."""
    sa, sb = component_names(a), component_names(b)
    if not sa and not sb:
        return 1.0
    return len(sa & sb) / len(sa | sb)


def complexity(script: SpellScript) -> ComplexityProfile:
    total = 0
    deepest = 0

    def walk(components, depth):
        nonlocal total, deepest
        for c in components:
            total += 1
            deepest = max(deepest, depth)
            walk(c.payload_components, depth + 1)

    walk(script.components, 0)
    return ComplexityProfile(component_complexity=total, nesting_complexity=deepest)
