"""Typed grammars, parsing, validation and repair for both DSLs."""

from __future__ import annotations

from .registry import (
    AUTOMATA_NODES,
    CLASS_COMPONENTS,
    COMPASS_8,
    COMPARISONS,
    DIRECTIONS,
    MAX_RULE_DEPTH,
    SPELL_COMPONENTS,
    TRIGGER_TYPES,
    registry_json,
)
from .report import ACCEPTED, FIZZLED, REPAIRED, Repair, ValidationReport, Violation
from .rules import (
    AIR,
    ActionNode,
    AutomataRule,
    canonicalize_rule,
    inert_rule,
    normalize_name,
    parse_rule,
    validate_rule,
)
from .spells import (
    SpellComponent,
    SpellScript,
    canonicalize_spell,
    fizzle,
    parse_spell,
    validate_spell,
)
from .textio import canonical_json, extract_last_payload, extract_payload, is_canonical


def canonicalize(script) -> str:
    """Canonical wire text for either DSL document type."""
    if isinstance(script, SpellScript):
        return canonicalize_spell(script)
    if isinstance(script, AutomataRule):
        return canonicalize_rule(script)
    raise TypeError(f"cannot canonicalize {type(script)!r}")


__all__ = [
    "ACCEPTED",
    "AIR",
    "AUTOMATA_NODES",
    "ActionNode",
    "AutomataRule",
    "CLASS_COMPONENTS",
    "COMPARISONS",
    "COMPASS_8",
    "DIRECTIONS",
    "FIZZLED",
    "MAX_RULE_DEPTH",
    "REPAIRED",
    "Repair",
    "SPELL_COMPONENTS",
    "SpellComponent",
    "SpellScript",
    "TRIGGER_TYPES",
    "ValidationReport",
    "Violation",
    "canonical_json",
    "canonicalize",
    "canonicalize_rule",
    "canonicalize_spell",
    "extract_last_payload",
    "extract_payload",
    "fizzle",
    "inert_rule",
    "is_canonical",
    "normalize_name",
    "parse_rule",
    "parse_spell",
    "registry_json",
    "validate_rule",
    "validate_spell",
]
