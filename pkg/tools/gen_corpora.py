"""Regenerate the committed 100-description input corpora.

Descriptions are sampled as unique (adjective, form, element/substance,
behavior) combinations, so the corpus is fixed, varied, and offline.
"""

import json
import pathlib

from spellforge.rng import Stream

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "spellforge" / "data"

SPELL_ADJ = ("crackling", "whispering", "molten", "frozen", "spiraling", "vengeful", "gentle", "shimmering", "howling", "creeping")
SPELL_FORM = ("bolt", "orb", "wall", "serpent", "rain", "lance", "shield", "swarm", "geyser", "blade")
SPELL_ELEMENT = ("fire", "water", "wind", "earth", "lightning", "ice")
SPELL_BEHAVIOR = (
    "seeks my foes",
    "splits on impact",
    "returns to me like a boomerang",
    "lingers as a burning mist",
    "knocks enemies skyward",
    "guards me while it lasts",
    "burrows through stone",
    "dances around obstacles",
    "explodes after a short delay",
    "obeys my steering",
)

MATERIAL_ADJ = ("sticky", "luminous", "volatile", "damp", "coarse", "feathery", "brittle", "oily", "misty", "magnetic")
MATERIAL_SUBSTANCE = ("powder", "gel", "vapor", "crystal", "slime", "dust", "foam", "resin", "ash", "brine")
MATERIAL_BEHAVIOR = (
    "sinks below everything lighter",
    "drifts upward and fades away",
    "spreads across surfaces",
    "hardens where it rests",
    "eats through its neighbors",
    "crackles and jumps at random",
    "settles into neat piles",
    "boils away from heat",
    "clumps together with its kind",
    "flows like slow syrup",
)


def sample_corpus(pools, count, seed, render):
    rng = Stream(seed)
    seen = set()
    items = []
    while len(items) < count:
        combo = tuple(rng.choice(pool) for pool in pools)
        if combo in seen:
            continue
        seen.add(combo)
        items.append(render(*combo))
    return items


def main():
    spells = sample_corpus(
        (SPELL_ADJ, SPELL_FORM, SPELL_ELEMENT, SPELL_BEHAVIOR),
        100,
        seed=0x5E11,
        render=lambda adj, form, element, behavior: f"a {adj} {form} of {element} that {behavior}",
    )
    materials = sample_corpus(
        (MATERIAL_ADJ, MATERIAL_SUBSTANCE, MATERIAL_BEHAVIOR),
        100,
        seed=0xCA00,
        render=lambda adj, substance, behavior: f"a {adj} {substance} that {behavior}",
    )
    spell_doc = [{"id": f"spell-{i:03d}", "text": t} for i, t in enumerate(spells)]
    material_doc = [{"id": f"automata-{i:03d}", "text": t} for i, t in enumerate(materials)]
    (OUT / "corpus_spell.json").write_text(json.dumps(spell_doc, indent=1), "utf-8")
    (OUT / "corpus_automata.json").write_text(json.dumps(material_doc, indent=1), "utf-8")
    print(f"{len(spell_doc)} spell descriptions, {len(material_doc)} material descriptions")


if __name__ == "__main__":
    main()
