"""Prompt assembly for every model-facing task.

Prompts are pure functions of their spec: instructions (with the full
registry expanded), then shot examples, then the optional planning block,
then dynamic game-state context, then the user input, always in that
order and always byte-identical for identical specs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from spellforge.assets import data_json
from spellforge.dsl import (
    AutomataRule,
    SPELL_COMPONENTS,
    AUTOMATA_NODES,
    SpellScript,
    canonical_json,
    canonicalize_rule,
    canonicalize_spell,
    parse_rule,
    parse_spell,
)

TASKS = ("spell", "automata", "describe", "judge")
SHOT_STRATEGIES = ("zero", "one", "few")
STYLES = ("narrative", "technical")
DETAILS = ("summary", "detailed")

_CATEGORY_HEADERS = (
    ("class", "I. Spell Class Components (choose exactly one as the primary form of the spell or sub-spell; more than one requires separate nested triggers):"),
    ("property", "II. General Spell Property Components (add as needed):"),
    ("modifier", "III. Behaviour Modifier Components (stackable; primarily affect projectile or wallCrawl):"),
    ("trigger", "IV. Trigger Components (define sub-spells executed when a condition fires; payloads inherit nothing and must restate what they need):"),
)

_NODE_HEADERS = (
    ("wrapper", "I. Wrapper / Modifier Nodes (contain other nodes and transform their directions):"),
    ("conditional", "II. Conditional Nodes (check a condition, then run nested actions):"),
    ("executor", "III. Executor / Action Nodes (perform an action; usually innermost):"),
)

_NODE_BLURBS = {
    "in_rand_rotation": "executes nested actions in one random of 8 directions",
    "in_rand_mirror": "randomly mirrors east/west for nested actions",
    "in_rand_flip": "randomly flips north/south for nested actions",
    "if_neighbor_is": "checks whether the neighbor in `direction` is one of the materials in `options`",
    "if_alpha": "compares this cell's alpha channel against `value`",
    "if_neighbor_count": "counts surrounding cells whose material is in `options` and compares against `value`",
    "if_chance": "passes with probability `p`",
    "if_neighbor_alpha": "compares the alpha of the neighbor in `direction` against `value`",
    "do_swap": "swaps position with the neighbor in `direction`, then immediately runs its nested actions from the new location; this entire operation ends the cell's turn",
    "do_set_type": "sets the cell in `direction` to `material`",
    "do_spawn": "creates `material` in the cell in `direction` only if that cell is air",
    "do_copy_alpha": "copies the alpha of the neighbor in `direction` onto this cell",
    "do_set_alpha": "sets this cell's alpha channel to `value`",
}


def _param_line(pspec) -> str:
    if pspec.type in ("int", "float"):
        return f"{pspec.name} ({pspec.type}, {pspec.min} to {pspec.max}, default {pspec.default})"
    if pspec.type == "enum":
        return f"{pspec.name} (one of {', '.join(pspec.options)})"
    if pspec.type == "element":
        return f"{pspec.name} (one of the magical elements listed in the context)"
    if pspec.type == "color":
        return f'{pspec.name} ("#RRGGBB" hex string)'
    if pspec.type == "direction":
        return f'{pspec.name} (a compass direction or "self")'
    if pspec.type == "comparison":
        return f"{pspec.name} (one of lt, le, eq, ge, gt)"
    if pspec.type == "material":
        return f"{pspec.name} (an existing material name)"
    if pspec.type == "materials":
        return f"{pspec.name} (list of existing material names)"
    return pspec.name


def render_spell_registry() -> str:
    lines = []
    for category, header in _CATEGORY_HEADERS:
        lines.append(header)
        for name, spec in SPELL_COMPONENTS.items():
            if spec.category != category:
                continue
            params = ", ".join(_param_line(p) for p in spec.params.values())
            extra = "; carries payload_components (an array of sub-spell components)" if spec.is_trigger else ""
            lines.append(f"- {name}: {params or 'no parameters'}{extra}")
        lines.append("")
    return "\n".join(lines).rstrip()


def render_node_registry() -> str:
    lines = []
    for category, header in _NODE_HEADERS:
        lines.append(header)
        for name, spec in AUTOMATA_NODES.items():
            if spec.category != category:
                continue
            fields = ", ".join(_param_line(p) for p in spec.fields.values())
            blurb = _NODE_BLURBS[name]
            suffix = f" Fields: {fields}." if fields else ""
            lines.append(f"- {name}: {blurb}.{suffix}")
        lines.append("")
    return "\n".join(lines).rstrip()


SPELL_INSTRUCTIONS = """You are an AI game design assistant. Your task is to generate a JSON object that defines a magical spell using a component-based system. The spell will be based on a provided description.

Overall goal:
Create a single JSON object. The root object must always contain the key "components", whose value is an array of individual component objects. It may optionally contain the key "count" (a positive integer) when a multi-cast is strictly appropriate. It must finally contain the key "friendlyName" with a creative 2-3 word name for future reference.

Strict output requirements:
- The entire response must end with a single, valid JSON object.
- Use only the componentTypes and properties defined below.
- For fields with enumerated options you must choose a value from the provided list; never invent new string values for these fields.
- If a property is optional and not relevant to the concept, omit it.
- Properties of a spell are never automatically inherited by sub-spells; repeat them inside trigger payloads as necessary.
- Always think creatively, and consider sub-spells or physical manifestations when they strengthen the concept.
- Numerical values should be sensible for a game context and fall within the suggested ranges.

Component definitions:

{registry}"""

AUTOMATA_INSTRUCTIONS = """You are a game design assistant specialising in cellular automata. Your task is to generate a single, valid JSON object that defines a behavior script based on the user's description. The output must contain three root keys: "name" (a creative, one-word, lowercase string), "color_hex" (a hex string like "#RRGGBB"), and "behavior" (an object containing the "actions" array).

The response must end with a single, valid JSON object. Adhere strictly to the node definitions provided.

Important notes:
- "direction" is a placeholder for one of: north, northeast, east, southeast, south, southwest, west, northwest.
- "self" is a valid direction keyword for the particle's own cell.
- Actions are processed sequentially.
- The do_swap node is special: it moves the cell, then can immediately run a nested actions list from the cell's new location, and it ends the cell's turn.
- If you are asked to update an existing cell type, do not alter its name field, or else it may break references.

Available node types (for the actions array inside the behavior object):

{registry}"""

DESCRIBE_INSTRUCTIONS = """You are a game archivist. Describe the magical spell defined by the JSON document at the end of this prompt in natural language.

Style: {style}
Detail: {detail}

Style guide: a "narrative" description is a creative, flavourful account with no numerals; a "technical" description is a precise specification. "summary" descriptions are one sentence focused on the spell's primary form; "detailed" descriptions account for every component and, when technical, every parameter value.

Spell document:
{script}"""

COT_BLOCK = """Before the final JSON object, write a short plan as plain prose (no braces): map each phrase of the request to the DSL components you will use. After the plan, output the final JSON object and nothing else after it."""


@dataclass(frozen=True)
class PromptSpec:
    task: str
    shot_strategy: str = "zero"
    cot: bool = False
    dynamic_context: Any = None
    user_input: str = ""

    def __post_init__(self):
        if self.task not in TASKS:
            raise ValueError(f"unknown task {self.task!r}")
        if self.shot_strategy not in SHOT_STRATEGIES:
            raise ValueError(f"unknown shot strategy {self.shot_strategy!r}")


def _fewshot(task: str) -> list[dict]:
    name = "fewshot_spells.json" if task == "spell" else "fewshot_materials.json"
    return data_json(name)


def fewshot_examples(task: str) -> list[tuple[str, str]]:
    """(description, canonical document) pairs for the committed set."""
    out = []
    for entry in _fewshot(task):
        doc = canonical_json(entry["document"])
        if task == "spell":
            script, report = parse_spell(doc, [])
            assert report.outcome == "accepted", f"bad few-shot example: {report.to_dict()}"
            doc = canonicalize_spell(script)
        else:
            rule, report = parse_rule(doc, [])
            assert report.outcome == "accepted", f"bad few-shot example: {report.to_dict()}"
            doc = canonicalize_rule(rule)
        out.append((entry["description"], doc))
    return out


def _example_blocks(task: str, shot_strategy: str) -> list[str]:
    if shot_strategy == "zero":
        return []
    examples = fewshot_examples(task)
    chosen = examples[:1] if shot_strategy == "one" else examples
    return [f"### Example\nRequest: {desc}\nResponse: {doc}" for desc, doc in chosen]


def _spell_context(context: Any) -> str:
    elements = list(context or [])
    return "Magical elements currently in play: " + (", ".join(elements) if elements else "(none)")


def _automata_context(context: Any) -> str:
    rules = list(context or [])
    if not rules:
        return "Existing materials: only the built-in empty material \"air\"."
    docs = []
    for rule in rules:
        docs.append(canonicalize_rule(rule) if isinstance(rule, AutomataRule) else canonical_json(rule))
    return "Existing materials (full definitions; reuse their names in options where useful):\n" + "\n".join(docs)


def build_prompt(spec: PromptSpec) -> str:
    """Deterministic prompt text for a PromptSpec."""
    if spec.task == "judge":
        from spellforge.judge.prompts import build_judge_prompt_from_context

        return build_judge_prompt_from_context(spec.dynamic_context)
    if spec.task == "describe":
        ctx = spec.dynamic_context or {}
        script = ctx["script"]
        doc = canonicalize_spell(script) if isinstance(script, SpellScript) else str(script)
        style, detail = ctx.get("style", "technical"), ctx.get("detail", "detailed")
        if style not in STYLES or detail not in DETAILS:
            raise ValueError(f"unknown style/detail: {style!r}/{detail!r}")
        return DESCRIBE_INSTRUCTIONS.format(style=style, detail=detail, script=doc)

    if spec.task == "spell":
        parts = [SPELL_INSTRUCTIONS.format(registry=render_spell_registry())]
        context_line = _spell_context(spec.dynamic_context)
    else:
        parts = [AUTOMATA_INSTRUCTIONS.format(registry=render_node_registry())]
        context_line = _automata_context(spec.dynamic_context)

    parts.extend(_example_blocks(spec.task, spec.shot_strategy))
    if spec.cot:
        parts.append(COT_BLOCK)
    parts.append(context_line)
    parts.append(f"Request: {spec.user_input}")
    return "\n\n".join(parts)
