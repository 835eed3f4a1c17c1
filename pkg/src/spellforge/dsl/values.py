"""Parameter coercion and repair shared by both DSL validators."""

from __future__ import annotations

import math
import re
from typing import Any

from .registry import COMPARISONS, DIRECTIONS, ParamSpec
from .report import ValidationReport

_COLOR_RE = re.compile(r"^#[0-9A-Fa-f]{6}$")

# Fallback element tag when no grounding list is supplied.
NEUTRAL_ELEMENT = "neutral"


def is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _clamp(value: float, lo: float | None, hi: float | None) -> float:
    if lo is not None and value < lo:
        return lo
    if hi is not None and value > hi:
        return hi
    return value


def repair_value(
    spec: ParamSpec,
    value: Any,
    path: str,
    report: ValidationReport,
    *,
    elements: list[str] | None = None,
    materials: set[str] | None = None,
) -> Any:
    """Coerce ``value`` to ``spec``, recording violations and repairs.

    Always returns a usable value; unusable input falls back to the
    registry default.
    """
    kind = spec.type
    if kind == "int":
        return _repair_int(spec, value, path, report)
    if kind == "float":
        return _repair_float(spec, value, path, report)
    if kind == "enum":
        return _repair_enum(spec, value, path, report)
    if kind == "element":
        return _repair_element(value, path, report, elements or [])
    if kind == "color":
        return _repair_color(spec, value, path, report)
    if kind == "direction":
        return _repair_choice(spec, value, path, report, DIRECTIONS)
    if kind == "comparison":
        return _repair_choice(spec, value, path, report, COMPARISONS)
    if kind == "material":
        return _repair_material(value, path, report, materials or set())
    if kind == "materials":
        return _repair_materials(spec, value, path, report, materials or set())
    raise AssertionError(f"unhandled param type {kind!r}")


def default_for(spec: ParamSpec, elements: list[str] | None = None) -> Any:
    if spec.type == "element":
        return elements[0] if elements else NEUTRAL_ELEMENT
    if spec.type == "materials":
        return list(spec.default)
    return spec.default


def _repair_int(spec: ParamSpec, value: Any, path: str, report: ValidationReport) -> int:
    if not is_number(value) or (isinstance(value, float) and not math.isfinite(value)):
        report.violate(path, "type-error", f"expected integer, got {value!r}")
        report.repair(path, "defaulted", value, spec.default)
        return int(spec.default)
    if isinstance(value, float) and not value.is_integer():
        rounded = int(_clamp(round(value), spec.min, spec.max))
        report.violate(path, "type-error", f"expected whole number, got {value!r}")
        report.repair(path, "clamped", value, rounded)
        return rounded
    value = int(value)
    clamped = int(_clamp(value, spec.min, spec.max))
    if clamped != value:
        report.violate(path, "out-of-range", f"{value!r} outside [{spec.min}, {spec.max}]")
        report.repair(path, "clamped", value, clamped)
    return clamped


def _repair_float(spec: ParamSpec, value: Any, path: str, report: ValidationReport) -> float:
    if not is_number(value) or (isinstance(value, float) and math.isnan(value)):
        report.violate(path, "type-error", f"expected number, got {value!r}")
        report.repair(path, "defaulted", None if is_number(value) else value, spec.default)
        return float(spec.default)
    value = float(value)
    clamped = float(_clamp(value, spec.min, spec.max))
    if clamped != value:
        report.violate(path, "out-of-range", f"{value!r} outside [{spec.min}, {spec.max}]")
        report.repair(path, "clamped", value, clamped)
    return clamped


def _repair_enum(spec: ParamSpec, value: Any, path: str, report: ValidationReport) -> str:
    if isinstance(value, str) and value in spec.options:
        return value
    report.violate(path, "out-of-range", f"{value!r} not one of {list(spec.options)}")
    report.repair(path, "defaulted", value, spec.default)
    return str(spec.default)


def _repair_element(value: Any, path: str, report: ValidationReport, elements: list[str]) -> str:
    if not elements:
        # No grounding list supplied; accept any non-empty string tag.
        if isinstance(value, str) and value:
            return value
        report.violate(path, "type-error", f"expected element name, got {value!r}")
        report.repair(path, "defaulted", value, NEUTRAL_ELEMENT)
        return NEUTRAL_ELEMENT
    if isinstance(value, str) and value in elements:
        return value
    report.violate(path, "out-of-range", f"{value!r} not an element in play")
    report.repair(path, "defaulted", value, elements[0])
    return elements[0]


def _repair_color(spec: ParamSpec, value: Any, path: str, report: ValidationReport) -> str:
    if isinstance(value, str) and _COLOR_RE.match(value):
        return value
    report.violate(path, "type-error", f"expected #RRGGBB color, got {value!r}")
    report.repair(path, "defaulted", value, spec.default)
    return str(spec.default)


def _repair_choice(
    spec: ParamSpec, value: Any, path: str, report: ValidationReport, allowed: tuple[str, ...]
) -> str:
    if isinstance(value, str) and value in allowed:
        return value
    report.violate(path, "out-of-range", f"{value!r} not one of {list(allowed)}")
    report.repair(path, "defaulted", value, spec.default)
    return str(spec.default)


def _repair_material(value: Any, path: str, report: ValidationReport, materials: set[str]) -> str:
    if isinstance(value, str) and value in materials:
        return value
    report.violate(path, "out-of-range", f"unknown material {value!r}")
    report.repair(path, "defaulted", value, "air")
    return "air"


def _repair_materials(
    spec: ParamSpec, value: Any, path: str, report: ValidationReport, materials: set[str]
) -> list[str]:
    if not isinstance(value, list):
        report.violate(path, "type-error", f"expected list of material names, got {value!r}")
        report.repair(path, "defaulted", value, list(spec.default))
        return list(spec.default)
    out: list[str] = []
    for i, entry in enumerate(value):
        epath = f"{path}[{i}]"
        if not isinstance(entry, str):
            report.violate(epath, "type-error", f"expected material name, got {entry!r}")
            report.repair(epath, "dropped", entry, None)
            continue
        if entry not in materials:
            report.violate(epath, "out-of-range", f"unknown material {entry!r}")
            report.repair(epath, "defaulted", entry, "air")
            entry = "air"
        out.append(entry)
    if not out:
        report.violate(path, "missing-required", "options list empty after repair")
        report.repair(path, "defaulted", value, list(spec.default))
        return list(spec.default)
    return out
