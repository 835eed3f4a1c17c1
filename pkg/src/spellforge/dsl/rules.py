"""The cellular-automata material DSL: rule parsing and repair.

Unlike spells there is no harmless fallback for a material; a rule that
cannot be repaired is rejected (outcome ``fizzled``) and must not be
installed. Callers check the report before registering.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any, Iterable

from .registry import AUTOMATA_NODES, MAX_RULE_DEPTH
from .report import ValidationReport
from .spells import _load_object
from .textio import canonical_json
from .values import default_for, repair_value

_ROOT_KEYS = ("name", "color_hex", "behavior")
_NAME_RE = re.compile(r"[^a-z]+")
_COLOR_RE = re.compile(r"^#[0-9A-Fa-f]{6}$")
DEFAULT_COLOR = "#FF00FF"

# Name of the built-in empty material; never redefinable.
AIR = "air"


@dataclass
class ActionNode:
    node_type: str
    params: dict[str, Any] = field(default_factory=dict)
    actions: list["ActionNode"] = field(default_factory=list)

    @property
    def takes_actions(self) -> bool:
        return AUTOMATA_NODES[self.node_type].takes_actions

    def to_wire(self) -> dict:
        doc: dict[str, Any] = {"type": self.node_type}
        doc.update(self.params)
        if self.takes_actions:
            doc["actions"] = [a.to_wire() for a in self.actions]
        return doc


@dataclass
class AutomataRule:
    name: str
    color_hex: str
    actions: list[ActionNode] = field(default_factory=list)

    def to_wire(self) -> dict:
        return {
            "name": self.name,
            "color_hex": self.color_hex,
            "behavior": {"actions": [a.to_wire() for a in self.actions]},
        }


def inert_rule() -> AutomataRule:
    """Placeholder returned for rejected documents; never installed."""
    return AutomataRule(name="fizzle", color_hex="#888888", actions=[])


def canonicalize_rule(rule: AutomataRule) -> str:
    return canonical_json(rule.to_wire())


def normalize_name(value: str) -> str:
    return _NAME_RE.sub("", value.lower())


def _material_names(existing_materials: Iterable) -> list[str]:
    names = []
    for m in existing_materials:
        names.append(m.name if isinstance(m, AutomataRule) else str(m))
    return names


def parse_rule(raw_text: str, existing_materials: Iterable) -> tuple[AutomataRule, ValidationReport]:
    """Parse arbitrary model output into a material rule.

    Never raises; on rejection returns an inert placeholder with outcome
    ``fizzled``. ``existing_materials`` may be rules or bare names.
    """
    report = ValidationReport()
    doc = _load_object(raw_text, report)
    if doc is None:
        return inert_rule(), report
    rule = _repair_rule(doc, _material_names(existing_materials), report)
    if rule is None:
        return inert_rule(), report
    return rule, report


def validate_rule(rule: AutomataRule, existing_materials: Iterable) -> ValidationReport:
    return parse_rule(canonicalize_rule(rule), existing_materials)[1]


def _repair_rule(doc: dict, existing: list[str], report: ValidationReport) -> AutomataRule | None:
    for key in sorted(doc):
        if key not in _ROOT_KEYS:
            report.violate(key, "unknown-type", f"unknown key {key!r}")
            report.repair(key, "dropped", doc[key], None)

    raw_name = doc.get("name")
    if not isinstance(raw_name, str):
        report.violate("name", "missing-required", "name missing or not text", fatal=True)
        return None
    name = normalize_name(raw_name)
    if not name:
        report.violate("name", "bad-structure", f"name {raw_name!r} has no letters", fatal=True)
        return None
    if name != raw_name:
        report.violate("name", "bad-structure", f"name {raw_name!r} not one lowercase word")
        report.repair("name", "clamped", raw_name, name)

    color = doc.get("color_hex")
    if not (isinstance(color, str) and _COLOR_RE.match(color)):
        if "color_hex" not in doc:
            report.violate("color_hex", "missing-required", "color_hex absent")
        else:
            report.violate("color_hex", "type-error", f"expected #RRGGBB color, got {color!r}")
        report.repair("color_hex", "defaulted", color, DEFAULT_COLOR)
        color = DEFAULT_COLOR

    behavior = doc.get("behavior")
    if not isinstance(behavior, dict):
        report.violate("behavior", "missing-required", "behavior missing or not an object", fatal=True)
        return None
    for key in sorted(behavior):
        if key != "actions":
            report.violate(f"behavior.{key}", "unknown-type", f"unknown key {key!r}")
            report.repair(f"behavior.{key}", "dropped", behavior[key], None)
    raw_actions = behavior.get("actions")
    if not isinstance(raw_actions, list):
        report.violate("behavior.actions", "missing-required", "actions missing or not a list", fatal=True)
        return None

    # Rules may reference themselves and any already-installed material.
    materials = set(existing) | {AIR, name}
    actions = _repair_actions(raw_actions, "behavior.actions", materials, report, depth=1)
    return AutomataRule(name=name, color_hex=color, actions=actions)


def _repair_actions(
    raw: list, path: str, materials: set[str], report: ValidationReport, depth: int
) -> list[ActionNode]:
    nodes: list[ActionNode] = []
    for i, entry in enumerate(raw):
        node = _repair_node(entry, f"{path}[{i}]", materials, report, depth)
        if node is not None:
            nodes.append(node)
    return nodes


def _repair_node(
    entry: Any, path: str, materials: set[str], report: ValidationReport, depth: int
) -> ActionNode | None:
    if depth > MAX_RULE_DEPTH:
        report.violate(path, "bad-structure", f"action tree deeper than {MAX_RULE_DEPTH}")
        report.repair(path, "dropped", entry if not isinstance(entry, dict) else entry.get("type"), None)
        return None
    if not isinstance(entry, dict):
        report.violate(path, "bad-structure", f"node is not an object: {entry!r}")
        report.repair(path, "dropped", entry, None)
        return None
    ntype = entry.get("type")
    if not isinstance(ntype, str):
        report.violate(path, "bad-structure", "type missing or not text")
        report.repair(path, "dropped", entry, None)
        return None
    spec = AUTOMATA_NODES.get(ntype)
    if spec is None:
        report.violate(path, "unknown-type", f"unknown node type {ntype!r}")
        report.repair(path, "dropped", ntype, None)
        return None

    params: dict[str, Any] = {}
    for key in sorted(entry):
        if key in ("type", "actions"):
            continue
        kpath = f"{path}.{key}"
        fspec = spec.fields.get(key)
        if fspec is None:
            report.violate(kpath, "unknown-type", f"unknown field {key!r}")
            report.repair(kpath, "dropped", entry[key], None)
            continue
        params[key] = repair_value(fspec, entry[key], kpath, report, materials=materials)
    for fname, fspec in spec.fields.items():
        if fname not in params:
            params[fname] = default_for(fspec)

    actions: list[ActionNode] = []
    raw_actions = entry.get("actions")
    if spec.takes_actions:
        if isinstance(raw_actions, list):
            actions = _repair_actions(raw_actions, f"{path}.actions", materials, report, depth + 1)
        elif raw_actions is not None:
            report.violate(f"{path}.actions", "type-error", "actions is not a list")
            report.repair(f"{path}.actions", "defaulted", raw_actions, [])
    elif raw_actions is not None:
        report.violate(f"{path}.actions", "bad-structure", f"{ntype} does not take nested actions")
        report.repair(f"{path}.actions", "dropped", raw_actions, None)

    return ActionNode(node_type=ntype, params=params, actions=actions)
