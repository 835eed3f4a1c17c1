from __future__ import annotations

import pytest

from spellforge.dsl import canonical_json, canonicalize, parse_spell, validate_spell
from spellforge.metrics import (
    ELEMENT_POOL,
    GenConfig,
    LabeledTree,
    complexity,
    gen_random_script,
    jaccard_components,
    ted,
    ted_oracle,
    to_tree,
)
from spellforge.rng import Stream
from tests.conftest import ELEMENTS


def rand_tree(rng: Stream, max_nodes: int, labels=("a", "b", "c")) -> LabeledTree:
    n = rng.randint(1, max_nodes)
    nodes = [LabeledTree(rng.choice(labels))]
    for _ in range(n - 1):
        parent = nodes[rng.below(len(nodes))]
        child = LabeledTree(rng.choice(labels))
        parent.children.append(child)
        nodes.append(child)
    return nodes[0]


class TestToTree:
    def test_smallest_object(self):
        tree = to_tree('{"a":1}')
        assert tree.label == "{}"
        assert tree.size() == 3
        assert tree.children[0].label == "key:a"
        assert tree.children[0].children[0].label == "val:num:1"

    def test_empty_object(self):
        tree = to_tree("{}")
        assert tree.size() == 1 and tree.label == "{}"

    def test_wind_scout_single_payload_key(self, wind_scout_canonical):
        tree = to_tree(wind_scout_canonical)

        def count(node, label):
            return (node.label == label) + sum(count(c, label) for c in node.children)

        assert count(tree, "key:payload_components") == 1

    def test_non_canonical_rejected(self):
        with pytest.raises(ValueError):
            to_tree('{"b":1,"a":2}')
        with pytest.raises(ValueError):
            to_tree("not json")

    def test_deterministic(self):
        doc = canonical_json({"k": [1, {"x": True}, None]})
        assert to_tree(doc) == to_tree(doc)


class TestTed:
    def test_identity_and_rename(self):
        assert ted(LabeledTree("a"), LabeledTree("a")) == 0
        assert ted(LabeledTree("a"), LabeledTree("b")) == 1

    def test_subchain_delete(self):
        chain3 = LabeledTree("a", [LabeledTree("b", [LabeledTree("c")])])
        chain2 = LabeledTree("a", [LabeledTree("c")])
        assert ted_oracle(chain3, chain2) == 1
        assert ted(chain3, chain2) == 1

    def test_oracle_equivalence_500_pairs(self):
        rng = Stream(2024)
        for _ in range(500):
            a, b = rand_tree(rng, 7), rand_tree(rng, 7)
            assert ted(a, b) == ted_oracle(a, b)

    def test_metric_axioms(self):
        rng = Stream(99)
        for _ in range(100):
            a, b = rand_tree(rng, 9), rand_tree(rng, 9)
            dab = ted(a, b)
            assert dab >= 0
            assert ted(a, a) == 0
            assert dab == ted(b, a)

    def test_triangle_inequality_spot_check(self):
        rng = Stream(424242)
        for _ in range(200):
            a, b, c = (rand_tree(rng, 10) for _ in range(3))
            assert ted(a, c) <= ted(a, b) + ted(b, c)

    def test_oracle_size_bound(self):
        def chain(n):
            root = node = LabeledTree("a")
            for _ in range(n - 1):
                child = LabeledTree("a")
                node.children.append(child)
                node = child
            return root

        with pytest.raises(ValueError):
            ted_oracle(chain(8), chain(8))

    def test_component_removal_increases_distance(self, wind_scout_canonical):
        script, _ = parse_spell(wind_scout_canonical, ELEMENTS)
        full = to_tree(canonicalize(script))
        script.components.pop(1)  # drop the element component
        pruned = to_tree(canonicalize(script))
        assert ted(full, pruned) >= 1


class TestJaccard:
    def test_self_similarity(self, wind_scout_canonical):
        script, _ = parse_spell(wind_scout_canonical, ELEMENTS)
        assert jaccard_components(script, script) == 1.0

    def test_disjoint(self):
        a, _ = parse_spell('{"friendlyName":"A B","components":[{"componentType":"projectile"}]}', ELEMENTS)
        b, _ = parse_spell('{"friendlyName":"C D","components":[{"componentType":"shield"}]}', ELEMENTS)
        assert jaccard_components(a, b) == 0.0

    def test_wind_scout_partial_overlap(self, wind_scout_canonical):
        full, _ = parse_spell(wind_scout_canonical, ELEMENTS)
        small, _ = parse_spell(
            '{"friendlyName":"Wind Dart","components":['
            '{"componentType":"projectile"},{"componentType":"element","element":"wind"}]}',
            ELEMENTS,
        )
        # {projectile, element, controllable, buttonTrigger, teleportCaster} vs {projectile, element}
        assert jaccard_components(full, small) == pytest.approx(0.4)


class TestComplexity:
    def test_fizzle_profile(self):
        from spellforge.dsl import fizzle

        prof = complexity(fizzle())
        assert prof.component_complexity == 2
        assert prof.nesting_complexity == 0

    def test_wind_scout_profile(self, wind_scout_canonical):
        script, _ = parse_spell(wind_scout_canonical, ELEMENTS)
        prof = complexity(script)
        assert prof.component_complexity == 5
        assert prof.nesting_complexity == 1

    def test_plain_projectile(self):
        script, _ = parse_spell(
            '{"friendlyName":"Dart","components":[{"componentType":"projectile"}]}', ELEMENTS
        )
        assert complexity(script) == complexity(script)
        assert complexity(script).component_complexity == 1
        assert complexity(script).nesting_complexity == 0


class TestGenerator:
    def test_always_valid(self):
        for seed in range(40):
            script = gen_random_script(GenConfig(seed=seed))
            report = validate_spell(script, list(ELEMENT_POOL))
            assert report.outcome == "accepted", (seed, report.to_dict())

    def test_deterministic_per_seed(self):
        for seed in (0, 7, 29):
            a = gen_random_script(GenConfig(seed=seed))
            b = gen_random_script(GenConfig(seed=seed))
            assert canonicalize(a) == canonicalize(b)
        assert canonicalize(gen_random_script(GenConfig(seed=1))) != canonicalize(
            gen_random_script(GenConfig(seed=2))
        )

    def test_default_config_spans_nesting_depths(self):
        depths = {
            complexity(gen_random_script(GenConfig(seed=s))).nesting_complexity for s in range(30)
        }
        assert {0, 1, 2} <= depths

    def test_depth_zero_config(self):
        script = gen_random_script(GenConfig(seed=5, max_depth=0))
        assert complexity(script).nesting_complexity == 0

    def test_bad_config_rejected(self):
        with pytest.raises(ValueError):
            GenConfig(seed=1, trigger_probability=1.5)
        with pytest.raises(ValueError):
            GenConfig(seed=1, components_min=0)


def test_roundtrip_floor(wind_scout_canonical):
    script, _ = parse_spell(wind_scout_canonical, ELEMENTS)
    doc = canonicalize(script)
    assert ted(to_tree(doc), to_tree(doc)) == 0
    assert jaccard_components(script, script) == 1.0
