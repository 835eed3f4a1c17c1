"""Validation reports shared by both DSL parsers.

A report records every violation found in a document, every repair that
was applied, and the overall outcome. The runtime never raises on bad
input; everything is absorbed here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

ACCEPTED = "accepted"
REPAIRED = "repaired"
FIZZLED = "fizzled"

VIOLATION_KINDS = ("unknown-type", "out-of-range", "missing-required", "bad-structure", "type-error")
REPAIR_ACTIONS = ("defaulted", "clamped", "dropped")


@dataclass
class Violation:
    path: str
    kind: str
    detail: str
    fatal: bool = False


@dataclass
class Repair:
    path: str
    action: str
    before: Any
    after: Any


@dataclass
class ValidationReport:
    syntactic_valid: bool = True
    violations: list[Violation] = field(default_factory=list)
    repairs: list[Repair] = field(default_factory=list)

    def violate(self, path: str, kind: str, detail: str, fatal: bool = False) -> None:
        self.violations.append(Violation(path, kind, detail, fatal))

    def repair(self, path: str, action: str, before: Any, after: Any) -> None:
        self.repairs.append(Repair(path, action, before, after))

    @property
    def fatal(self) -> bool:
        return any(v.fatal for v in self.violations)

    @property
    def outcome(self) -> str:
        if self.fatal:
            return FIZZLED
        if self.violations:
            return REPAIRED
        return ACCEPTED

    def is_consistent(self) -> bool:
        """Invariant checked by the fuzz suite: outcome agrees with lists."""
        if not self.syntactic_valid and not self.fatal:
            return False
        if self.outcome == ACCEPTED:
            return not self.violations and not self.repairs and self.syntactic_valid
        if self.outcome == REPAIRED:
            return bool(self.violations) and not self.fatal
        return self.fatal

    def to_dict(self) -> dict:
        return {
            "syntactic_valid": self.syntactic_valid,
            "outcome": self.outcome,
            "violations": [
                {"path": v.path, "kind": v.kind, "detail": v.detail, "fatal": v.fatal}
                for v in self.violations
            ],
            "repairs": [
                {"path": r.path, "action": r.action, "before": r.before, "after": r.after}
                for r in self.repairs
            ],
        }
