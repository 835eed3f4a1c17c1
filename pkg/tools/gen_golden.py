"""Regenerate the committed DSL golden fixtures (goldens are pinned; rerun
only when the canonical wire format intentionally changes)."""

import json
import pathlib

from spellforge.dsl import canonicalize, fizzle, parse_rule, parse_spell

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "spellforge" / "data" / "golden"

WIND_DOC = {
    "friendlyName": "Wind scout",
    "count": 1,
    "components": [
        {"componentType": "projectile", "radius": 2, "speed": 15, "gravity": 0},
        {"componentType": "element", "element": "wind"},
        {"componentType": "controllable", "mana_cost": 0.1},
        {"componentType": "buttonTrigger", "payload_components": [{"componentType": "teleportCaster"}]},
    ],
}
GAS_DOC = {
    "name": "gas",
    "color_hex": "#CCCCCC",
    "behavior": {
        "actions": [
            {
                "type": "in_rand_rotation",
                "actions": [
                    {
                        "type": "if_neighbor_is",
                        "direction": "south",
                        "options": ["air"],
                        "actions": [{"type": "do_swap", "direction": "south"}],
                    }
                ],
            }
        ]
    },
}

ELEMENTS = ["fire", "water", "wind", "earth"]


def spell_doc(**over):
    doc = json.loads(json.dumps(WIND_DOC))
    doc.update(over)
    return doc


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    wind_raw = json.dumps(WIND_DOC, indent=1)
    gas_raw = json.dumps(GAS_DOC, indent=1)

    ws, wrep = parse_spell(wind_raw, ELEMENTS)
    assert wrep.outcome == "accepted", wrep.to_dict()
    gr, grep = parse_rule(gas_raw, [])
    assert grep.outcome == "accepted", grep.to_dict()

    wind_canon = canonicalize(ws)
    (OUT / "wind_scout.json").write_text(wind_canon, "utf-8")
    (OUT / "gas.json").write_text(canonicalize(gr), "utf-8")
    (OUT / "fizzle.json").write_text(canonicalize(fizzle()), "utf-8")

    mutations = [
        {
            "name": "spell_unknown_component",
            "dsl": "spell",
            "raw": json.dumps(
                spell_doc(components=WIND_DOC["components"] + [{"componentType": "frobnicate", "power": 3}])
            ),
            "expected": {
                "outcome": "repaired",
                "component_types": ["projectile", "element", "controllable", "buttonTrigger"],
            },
        },
        {
            "name": "spell_speed_out_of_range",
            "dsl": "spell",
            "raw": wind_raw.replace('"speed": 15', '"speed": 9999'),
            "expected": {"outcome": "repaired", "param": {"component": "projectile", "name": "speed", "value": 50}},
        },
        {
            "name": "spell_count_out_of_range",
            "dsl": "spell",
            "raw": wind_raw.replace('"count": 1', '"count": 99'),
            "expected": {"outcome": "repaired", "count": 10},
        },
        {
            "name": "spell_missing_class",
            "dsl": "spell",
            "raw": json.dumps(spell_doc(components=[{"componentType": "element", "element": "wind"}])),
            "expected": {"outcome": "fizzled"},
        },
        {
            "name": "spell_truncated",
            "dsl": "spell",
            "raw": wind_canon[: int(len(wind_canon) * 0.6)],
            "expected": {"outcome": "fizzled"},
        },
        {
            "name": "spell_missing_components_key",
            "dsl": "spell",
            "raw": json.dumps({"friendlyName": "Hollow Husk"}),
            "expected": {"outcome": "fizzled"},
        },
        {
            "name": "spell_two_classes",
            "dsl": "spell",
            "raw": json.dumps(spell_doc(components=[{"componentType": "projectile"}, {"componentType": "aoe"}])),
            "expected": {"outcome": "repaired", "component_types": ["projectile"]},
        },
        {
            "name": "rule_name_not_lowercase_word",
            "dsl": "rule",
            "raw": gas_raw.replace('"name": "gas"', '"name": "Gas Cloud"'),
            "expected": {"outcome": "repaired", "rule_name": "gascloud"},
        },
        {
            "name": "rule_missing_behavior",
            "dsl": "rule",
            "raw": json.dumps({"name": "husk", "color_hex": "#112233"}),
            "expected": {"outcome": "fizzled"},
        },
        {
            "name": "rule_unknown_node",
            "dsl": "rule",
            "raw": json.dumps(
                {
                    "name": "husk",
                    "color_hex": "#112233",
                    "behavior": {"actions": [{"type": "do_explode", "direction": "south"}]},
                }
            ),
            "expected": {"outcome": "repaired", "action_count": 0},
        },
        {
            "name": "rule_unknown_option_material",
            "dsl": "rule",
            "raw": json.dumps(
                {
                    "name": "husk",
                    "color_hex": "#112233",
                    "behavior": {
                        "actions": [
                            {"type": "if_neighbor_is", "direction": "south", "options": ["plasma"], "actions": []}
                        ]
                    },
                }
            ),
            "expected": {"outcome": "repaired", "node_options": ["air"]},
        },
    ]
    (OUT / "mutations.json").write_text(json.dumps(mutations, indent=1), "utf-8")
    print("fixtures written:", sorted(p.name for p in OUT.iterdir()))


if __name__ == "__main__":
    main()
