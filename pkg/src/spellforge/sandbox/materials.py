"""Material registry for the cellular-automata sandbox.

Type ids are stable for the lifetime of a registry: re-registering a
name replaces its behavior and color in place so existing grid cells and
option lists keep working. "air" is built in and cannot be redefined.
"""

from __future__ import annotations

from spellforge.dsl import AIR, AutomataRule

AIR_COLOR = "#000000"


class MaterialRegistry:
    def __init__(self):
        self._names: list[str] = [AIR]
        self._rules: dict[str, AutomataRule] = {}
        self._colors: dict[str, str] = {AIR: AIR_COLOR}

    def __len__(self) -> int:
        return len(self._names)

    def __contains__(self, name: str) -> bool:
        return name in self._colors

    @property
    def names(self) -> list[str]:
        return list(self._names)

    def register(self, rule: AutomataRule) -> int:
        """Install or update a material; returns its type id."""
        if rule.name == AIR:
            raise ValueError('"air" is built in and cannot be redefined')
        if rule.name not in self._colors:
            self._names.append(rule.name)
        self._rules[rule.name] = rule
        self._colors[rule.name] = rule.color_hex
        return self._names.index(rule.name)

    def type_id(self, name: str) -> int:
        """Id for a name; unknown names resolve to air."""
        try:
            return self._names.index(name)
        except ValueError:
            return 0

    def name_of(self, type_id: int) -> str:
        if 0 <= type_id < len(self._names):
            return self._names[type_id]
        return AIR

    def rule_for(self, type_id: int) -> AutomataRule | None:
        return self._rules.get(self.name_of(type_id))

    def palette(self) -> dict[str, str]:
        return dict(self._colors)

    def rules(self) -> list[AutomataRule]:
        return [self._rules[n] for n in self._names if n in self._rules]
