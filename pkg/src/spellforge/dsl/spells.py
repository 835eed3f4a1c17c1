"""The compositional spell DSL: types, parsing, repair, serialization.

A spell is an unordered collection of components; trigger components
embed sub-spells that stand alone (nothing is inherited). Parsing never
raises: anything unusable collapses to the canonical fizzle script and
the report says why.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .registry import COUNT_MAX, COUNT_MIN, SPELL_COMPONENTS
from .report import ValidationReport
from .textio import canonical_json, extract_payload
from .values import default_for, is_number, repair_value

# Trigger payloads deeper than this are dropped; keeps parsing total on
# adversarial input. Generated scripts stay well below it.
MAX_SPELL_DEPTH = 8

_ROOT_KEYS = ("friendlyName", "count", "components")
DEFAULT_NAME = "Unnamed Spell"


@dataclass
class SpellComponent:
    component_type: str
    params: dict[str, Any] = field(default_factory=dict)
    payload_components: list["SpellComponent"] = field(default_factory=list)

    @property
    def is_trigger(self) -> bool:
        return SPELL_COMPONENTS[self.component_type].is_trigger

    @property
    def is_class(self) -> bool:
        return SPELL_COMPONENTS[self.component_type].is_class

    def to_wire(self) -> dict:
        doc: dict[str, Any] = {"componentType": self.component_type}
        doc.update(self.params)
        if self.is_trigger:
            doc["payload_components"] = [c.to_wire() for c in self.payload_components]
        return doc


@dataclass
class SpellScript:
    friendly_name: str
    count: int = 1
    components: list[SpellComponent] = field(default_factory=list)

    def to_wire(self) -> dict:
        return {
            "friendlyName": self.friendly_name,
            "count": self.count,
            "components": [c.to_wire() for c in self.components],
        }

    def class_component(self) -> SpellComponent:
        for comp in self.components:
            if comp.is_class:
                return comp
        raise ValueError("script has no class component")


def fizzle() -> SpellScript:
    """The canonical harmless fallback: a 1-radius, 0-damage gray puff."""
    return SpellScript(
        friendly_name="Fizzle",
        count=1,
        components=[
            SpellComponent("aoe", {"radius": 1.0, "duration": 0.5, "damage": 0.0}),
            SpellComponent("color", {"hex": "#888888"}),
        ],
    )


def canonicalize_spell(script: SpellScript) -> str:
    return canonical_json(script.to_wire())


def parse_spell(raw_text: str, elements_in_play: list[str]) -> tuple[SpellScript, ValidationReport]:
    """Parse arbitrary model output into a usable SpellScript.

    Never raises. Unrecoverable input yields the fizzle constant with
    outcome ``fizzled``.
    """
    report = ValidationReport()
    doc = _load_object(raw_text, report)
    if doc is None:
        return fizzle(), report

    script = _repair_spell(doc, elements_in_play, report)
    if script is None:
        return fizzle(), report
    return script, report


def validate_spell(script: SpellScript, elements_in_play: list[str]) -> ValidationReport:
    """Re-validate an in-memory script via its canonical form."""
    return parse_spell(canonicalize_spell(script), elements_in_play)[1]


def _load_object(raw_text: Any, report: ValidationReport) -> dict | None:
    if not isinstance(raw_text, str):
        raw_text = ""
    payload = extract_payload(raw_text)
    if not payload:
        report.syntactic_valid = False
        report.violate("", "bad-structure", "no JSON object found in output", fatal=True)
        return None
    try:
        doc = json.loads(payload)
    except (ValueError, RecursionError):
        report.syntactic_valid = False
        report.violate("", "bad-structure", "payload is not valid JSON", fatal=True)
        return None
    if not isinstance(doc, dict):
        report.syntactic_valid = False
        report.violate("", "bad-structure", "payload is not a JSON object", fatal=True)
        return None
    return doc


def _repair_spell(doc: dict, elements: list[str], report: ValidationReport) -> SpellScript | None:
    for key in sorted(doc):
        if key not in _ROOT_KEYS:
            report.violate(key, "unknown-type", f"unknown key {key!r}")
            report.repair(key, "dropped", doc[key], None)

    name = _repair_name(doc.get("friendlyName"), "friendlyName" in doc, report)
    count = _repair_count(doc.get("count"), "count" in doc, report)

    raw_components = doc.get("components")
    if raw_components is None:
        report.violate("components", "missing-required", "components key absent", fatal=True)
        return None
    if not isinstance(raw_components, list):
        report.violate("components", "bad-structure", "components is not a list", fatal=True)
        return None

    components = _repair_component_list(raw_components, "components", elements, report, depth=0)
    if components is None:
        report.violate("components", "missing-required", "no spell class component", fatal=True)
        return None
    return SpellScript(friendly_name=name, count=count, components=components)


def _repair_name(value: Any, present: bool, report: ValidationReport) -> str:
    if isinstance(value, str) and value.strip():
        return value.strip()
    if not present:
        report.violate("friendlyName", "missing-required", "friendlyName absent")
    elif isinstance(value, str):
        report.violate("friendlyName", "missing-required", "friendlyName empty")
    else:
        report.violate("friendlyName", "type-error", f"expected text, got {value!r}")
    report.repair("friendlyName", "defaulted", value, DEFAULT_NAME)
    return DEFAULT_NAME


def _repair_count(value: Any, present: bool, report: ValidationReport) -> int:
    if not present:
        return 1
    if not is_number(value):
        report.violate("count", "type-error", f"expected integer, got {value!r}")
        report.repair("count", "defaulted", value, 1)
        return 1
    whole = int(round(value))
    if isinstance(value, float) and not value.is_integer():
        report.violate("count", "type-error", f"expected whole number, got {value!r}")
        report.repair("count", "clamped", value, whole)
    clamped = min(max(whole, COUNT_MIN), COUNT_MAX)
    if clamped != whole:
        report.violate("count", "out-of-range", f"{whole} outside [{COUNT_MIN}, {COUNT_MAX}]")
        report.repair("count", "clamped", whole, clamped)
    return clamped


def _repair_component_list(
    raw: list, path: str, elements: list[str], report: ValidationReport, depth: int
) -> list[SpellComponent] | None:
    """Validate one nesting level. Returns None when no class component
    survives (the caller decides whether that is fatal)."""
    kept: list[SpellComponent] = []
    class_seen = False
    for i, entry in enumerate(raw):
        cpath = f"{path}[{i}]"
        comp = _repair_component(entry, cpath, elements, report, depth)
        if comp is None:
            continue
        if comp.is_class:
            if class_seen:
                report.violate(cpath, "bad-structure", "second class component at one nesting level")
                report.repair(cpath, "dropped", comp.component_type, None)
                continue
            class_seen = True
        kept.append(comp)
    if not class_seen:
        return None
    return kept


def _repair_component(
    entry: Any, path: str, elements: list[str], report: ValidationReport, depth: int
) -> SpellComponent | None:
    if not isinstance(entry, dict):
        report.violate(path, "bad-structure", f"component is not an object: {entry!r}")
        report.repair(path, "dropped", entry, None)
        return None
    ctype = entry.get("componentType")
    if not isinstance(ctype, str):
        report.violate(path, "bad-structure", "componentType missing or not text")
        report.repair(path, "dropped", entry, None)
        return None
    spec = SPELL_COMPONENTS.get(ctype)
    if spec is None:
        report.violate(path, "unknown-type", f"unknown componentType {ctype!r}")
        report.repair(path, "dropped", ctype, None)
        return None

    params: dict[str, Any] = {}
    for key in sorted(entry):
        if key == "componentType":
            continue
        kpath = f"{path}.{key}"
        if key == "payload_components":
            if not spec.is_trigger:
                report.violate(kpath, "bad-structure", "payload_components on a non-trigger")
                report.repair(kpath, "dropped", entry[key], None)
            continue
        pspec = spec.params.get(key)
        if pspec is None:
            report.violate(kpath, "unknown-type", f"unknown parameter {key!r}")
            report.repair(kpath, "dropped", entry[key], None)
            continue
        params[key] = repair_value(pspec, entry[key], kpath, report, elements=elements)

    # Materialize registry defaults for anything omitted.
    for pname, pspec in spec.params.items():
        if pname not in params:
            params[pname] = default_for(pspec, elements)

    payload: list[SpellComponent] = []
    if spec.is_trigger:
        ppath = f"{path}.payload_components"
        raw_payload = entry.get("payload_components")
        if depth + 1 > MAX_SPELL_DEPTH:
            report.violate(ppath, "bad-structure", "trigger nesting too deep")
            report.repair(path, "dropped", ctype, None)
            return None
        if not isinstance(raw_payload, list) or not raw_payload:
            report.violate(ppath, "missing-required", "trigger payload missing or empty")
            report.repair(path, "dropped", ctype, None)
            return None
        nested = _repair_component_list(raw_payload, ppath, elements, report, depth + 1)
        if nested is None:
            report.violate(ppath, "missing-required", "payload has no class component")
            report.repair(path, "dropped", ctype, None)
            return None
        payload = nested

    return SpellComponent(component_type=ctype, params=params, payload_components=payload)
