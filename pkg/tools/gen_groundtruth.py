"""Regenerate the committed good/bad ground-truth corpus.

Good spells come from the procedural generator with their exact
technical descriptions; bad ones corrupt a good script (class
replacement or truncation) while keeping the original description, so
they stay syntactically valid but logically flawed. Rules follow the
same scheme over a pool of authored behavior patterns.
"""

import json
import pathlib

from spellforge.dsl import canonical_json, canonicalize_spell, parse_rule, parse_spell
from spellforge.metrics import GenConfig, gen_random_script
from spellforge.pipeline.mocks import TemplateDescriber
from spellforge.rng import Stream

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "spellforge" / "data"

NON_CARRIER_CLASSES = ("aoe", "shield", "manifestation", "beam", "teleportCaster")
RULE_NAMES = (
    "grit", "silt", "ashen", "mist", "spore",
    "haze", "ooze", "brine", "soot", "cinder",
    "frost", "marsh", "dust", "fog", "resin",
)


def good_spells():
    describer = TemplateDescriber()
    items = []
    for i in range(25):
        script = gen_random_script(GenConfig(seed=100 + i))
        doc = canonicalize_spell(script)
        items.append(
            {
                "item_id": f"spell_good_{i:02d}",
                "label": "good",
                "dsl_kind": "spell",
                "user_input": describer.render(script, "technical", "detailed"),
                "document": doc,
            }
        )
    return items


def corrupt_spell(doc_text: str, index: int, rng: Stream) -> str:
    doc = json.loads(doc_text)
    components = doc["components"]
    class_idx = next(
        i for i, c in enumerate(components) if c["componentType"] in NON_CARRIER_CLASSES + ("projectile", "wallCrawl", "summon")
    )
    if index % 2 == 0:
        # replacement: swap the class for a different non-carrier one and
        # make sure a modifier is present so the combination is incoherent
        current = components[class_idx]["componentType"]
        choices = [c for c in NON_CARRIER_CLASSES if c != current]
        components[class_idx] = {"componentType": rng.choice(choices)}
        if not any(c["componentType"] in ("homing", "boomerang", "controllable") for c in components):
            components.append({"componentType": "homing", "strength": 0.5})
    else:
        # truncation: bare class, everything else dropped
        doc["components"] = [components[class_idx]]
    return canonical_json(doc)


def bad_spells(goods):
    rng = Stream(0xBAD5)
    items = []
    for i, good in enumerate(goods):
        corrupted = corrupt_spell(good["document"], i, rng)
        script, report = parse_spell(corrupted, [])
        assert report.outcome == "accepted", (good["item_id"], report.to_dict())
        items.append(
            {
                "item_id": f"spell_bad_{i:02d}",
                "label": "bad",
                "dsl_kind": "spell",
                "user_input": good["user_input"],
                "document": canonicalize_spell(script),
            }
        )
    return items


def _swap(direction):
    return {"type": "do_swap", "direction": direction}


def _sense(direction, options, then):
    return {"type": "if_neighbor_is", "direction": direction, "options": options, "actions": then}


RULE_PATTERNS = (
    ("falls straight down through empty space", lambda: [_sense("south", ["air"], [_swap("south")])]),
    ("drifts upward through empty space", lambda: [_sense("north", ["air"], [_swap("north")])]),
    (
        "wanders in random directions like a diffusing gas",
        lambda: [{"type": "in_rand_rotation", "actions": [_sense("south", ["air"], [_swap("south")])]}],
    ),
    (
        "flickers while it settles",
        lambda: [
            {"type": "if_chance", "p": 0.5, "actions": [{"type": "do_set_alpha", "value": 120}]},
            _sense("south", ["air"], [_swap("south")]),
        ],
    ),
    (
        "slides sideways, mirrored at random",
        lambda: [{"type": "in_rand_mirror", "actions": [_sense("east", ["air"], [_swap("east")])]}],
    ),
)


def _node_types(actions):
    for node in actions:
        yield node["type"]
        yield from _node_types(node.get("actions", []))


def good_rules():
    rng = Stream(0x600D)
    items = []
    for i, name in enumerate(RULE_NAMES):
        blurb, builder = RULE_PATTERNS[i % len(RULE_PATTERNS)]
        actions = builder()
        color = "#%06X" % rng.below(1 << 24)
        doc = {"name": name, "color_hex": color, "behavior": {"actions": actions}}
        rule, report = parse_rule(canonical_json(doc), [])
        assert report.outcome == "accepted", report.to_dict()
        types = ", ".join(dict.fromkeys(_node_types(actions)))
        items.append(
            {
                "item_id": f"rule_good_{i:02d}",
                "label": "good",
                "dsl_kind": "automata",
                "user_input": f"A material named {name} that {blurb}. It should use: {types}.",
                "document": canonical_json(rule.to_wire()),
            }
        )
    return items


def corrupt_rule(doc_text: str, index: int) -> str:
    doc = json.loads(doc_text)

    def strip_executors(actions):
        out = []
        for node in actions:
            if node["type"].startswith("do_"):
                # replacement: dead wrapper where the action used to be
                out.append({"type": "in_rand_rotation", "actions": []})
            else:
                node = dict(node)
                if "actions" in node:
                    node["actions"] = strip_executors(node["actions"])
                out.append(node)
        return out

    def empty_conditionals(actions):
        out = []
        for node in actions:
            node = dict(node)
            if node["type"].startswith("if_") or node["type"].startswith("in_"):
                node["actions"] = []
            out.append(node)
        return out

    actions = doc["behavior"]["actions"]
    doc["behavior"]["actions"] = strip_executors(actions) if index % 2 == 0 else empty_conditionals(actions)
    return canonical_json(doc)


def bad_rules(goods):
    items = []
    for i, good in enumerate(goods):
        corrupted = corrupt_rule(good["document"], i)
        rule, report = parse_rule(corrupted, [])
        assert report.outcome == "accepted", (good["item_id"], report.to_dict())
        items.append(
            {
                "item_id": f"rule_bad_{i:02d}",
                "label": "bad",
                "dsl_kind": "automata",
                "user_input": good["user_input"],
                "document": canonical_json(rule.to_wire()),
            }
        )
    return items


def main():
    spells = good_spells()
    spells += bad_spells(spells)
    rules = good_rules()
    rules += bad_rules(rules)
    (OUT / "groundtruth_spells.json").write_text(json.dumps(spells, indent=1), "utf-8")
    (OUT / "groundtruth_automata.json").write_text(json.dumps(rules, indent=1), "utf-8")
    print(f"{len(spells)} spell items, {len(rules)} automata items")


if __name__ == "__main__":
    main()
