"""Ordered labeled trees derived from canonical DSL documents.

Objects become a "{}" node with one child per key (keys are sorted by
canonicalization); each key child is labeled ``key:<name>`` and holds the
value subtree. Arrays become "[]" with children in order; scalars become
``val:<type>:<text>`` leaves.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from spellforge.dsl import canonical_json, is_canonical


@dataclass
class LabeledTree:
    label: str
    children: list["LabeledTree"] = field(default_factory=list)

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def as_tuple(self):
        return (self.label, tuple(c.as_tuple() for c in self.children))

    def __eq__(self, other) -> bool:
        return isinstance(other, LabeledTree) and self.as_tuple() == other.as_tuple()

    def __hash__(self) -> int:
        return hash(self.as_tuple())


def _scalar_label(value) -> str:
    if value is None:
        return "val:null:null"
    if value is True:
        return "val:bool:true"
    if value is False:
        return "val:bool:false"
    if isinstance(value, (int, float)):
        return f"val:num:{canonical_json(value)}"
    return f"val:str:{value}"


def _build(value) -> LabeledTree:
    if isinstance(value, dict):
        node = LabeledTree("{}")
        for key in sorted(value):
            node.children.append(LabeledTree(f"key:{key}", [_build(value[key])]))
        return node
    if isinstance(value, list):
        return LabeledTree("[]", [_build(v) for v in value])
    return LabeledTree(_scalar_label(value))


def to_tree(document: str) -> LabeledTree:
    """Tree form of a canonical DSL document.

    Raises ValueError on non-canonical input; callers canonicalize first
    so that structurally equal documents always yield equal trees.
    """
    if not is_canonical(document):
        raise ValueError("document is not in canonical form")
    return _build(json.loads(document))
