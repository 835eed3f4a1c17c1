"""Deterministic rubric-following judge for offline runs.

Scores are simple content heuristics over the prompt's embedded request
and script: thematic overlap for creative alignment, full component
overlap for instruction following, unrequested-but-coherent additions
for emergence, and parse outcome plus detectable dead logic for
structural coherence, honoring the pre-check cap.
"""

from __future__ import annotations

import hashlib
import json
import re

from spellforge.dsl import ActionNode, SpellScript, parse_rule, parse_spell
from spellforge.pipeline.providers import Completion, ProviderError
from spellforge.rng import Stream

from .prompts import SCALES

_KIND_RE = re.compile(r"Task documentation \((spell|automata) DSL\)")
_REQUEST_RE = re.compile(r"User request:\n(.*?)\n\nGenerated script:\n", re.DOTALL)
_SCRIPT_RE = re.compile(r"Generated script:\n(.*)\Z", re.DOTALL)
_PRECHECK_RE = re.compile(r"Algorithmic pre-check: (PASSED WITH REPAIRS|PASSED|FAILED)")

# Modifiers only cohere when something steerable carries them.
_CARRIER_CLASSES = {"projectile", "wallCrawl", "summon"}
_MODIFIERS = {"homing", "boomerang", "controllable"}


def _spell_nodes(script: SpellScript):
    def walk(components):
        for c in components:
            yield c
            yield from walk(c.payload_components)

    return list(walk(script.components))


def _rule_nodes(actions: list[ActionNode]):
    for node in actions:
        yield node
        yield from _rule_nodes(node.actions)


def _clamp_score(x: float) -> int:
    return min(max(int(round(x)), 1), 5)


class MockJudge:
    """Provider-compatible judge. ``jitter_seed`` perturbs scores by at
    most one point per scale, modelling a second, mostly-agreeing rater."""

    def __init__(self, provider_id: str = "mock-judge", jitter_seed: int | None = None):
        self.provider_id = provider_id
        self.jitter_seed = jitter_seed

    def complete(self, prompt: str) -> Completion:
        kind = _KIND_RE.search(prompt)
        request = _REQUEST_RE.search(prompt)
        script_text = _SCRIPT_RE.search(prompt)
        precheck = _PRECHECK_RE.search(prompt)
        if not (kind and request and script_text and precheck):
            raise ProviderError("not a judge prompt")
        scores, rationales = self.score(
            kind.group(1), request.group(1), script_text.group(1).strip(), precheck.group(1)
        )
        doc = {"rationales": rationales, "scores": scores}
        return Completion(text=json.dumps(doc), latency=0.0)

    # -- scoring ---------------------------------------------------------

    def score(self, kind: str, request: str, script_text: str, precheck: str):
        if kind == "spell":
            theme, logic, flaws = self._spell_features(request, script_text)
        else:
            theme, logic, flaws = self._rule_features(request, script_text)

        creative = _clamp_score(1 + 4 * theme)
        following = _clamp_score(1 + 4 * logic)
        emergence = 1
        if theme >= 0.99:  # additions only count when the theme is intact
            emergence = 2 + min(flaws.get("extras", 0), 2)

        structural = 5 if precheck == "PASSED" else 3
        structural -= flaws.get("dead_logic", 0)
        structural = max(structural, 1)
        if precheck == "FAILED":
            structural = min(structural, 2)

        scores = {
            "creative_alignment": creative,
            "instruction_following": following,
            "emergence": emergence,
            "structural_coherence": structural,
        }
        if self.jitter_seed is not None:
            rng = Stream(self.jitter_seed, int.from_bytes(hashlib.sha256(script_text.encode()).digest()[:8], "big"))
            for scale in SCALES:
                roll = rng.random()
                delta = -1 if roll < 0.25 else (1 if roll > 0.75 else 0)
                value = min(max(scores[scale] + delta, 1), 5)
                if scale == "structural_coherence" and precheck == "FAILED":
                    value = min(value, 2)
                scores[scale] = value

        rationales = {
            "creative_alignment": f"Thematic overlap with the request is {theme:.2f}.",
            "instruction_following": f"Requested and delivered structures overlap at {logic:.2f}.",
            "emergence": f"{flaws.get('extras', 0)} coherent unrequested addition(s).",
            "structural_coherence": f"Pre-check {precheck.lower()}; {flaws.get('dead_logic', 0)} dead-logic flag(s).",
        }
        return scores, rationales

    def _spell_features(self, request: str, script_text: str):
        script, report = parse_spell(script_text, [])
        if report.outcome == "fizzled":
            return 0.0, 0.0, {"dead_logic": 2, "extras": 0}
        nodes = _spell_nodes(script)
        present = {c.component_type for c in nodes}
        elements = {str(c.params.get("element")) for c in nodes if c.component_type == "element"}
        theme_tokens = {c.component_type for c in nodes if c.is_class} | elements
        logic_mentioned = {name for name in present if name in request}
        theme_mentioned = {tok for tok in theme_tokens if tok in request}
        # names in the request but absent from the script also hurt
        from spellforge.dsl import CLASS_COMPONENTS, SPELL_COMPONENTS
        from spellforge.metrics import ELEMENT_POOL

        requested = {name for name in SPELL_COMPONENTS if name in request}
        requested_theme = {e for e in ELEMENT_POOL if e in request}
        requested_theme |= {c for c in CLASS_COMPONENTS if c in request}
        theme = self._jaccard(theme_mentioned, theme_tokens, requested_extra=requested_theme - theme_tokens)
        logic = self._jaccard(logic_mentioned, present, requested_extra=requested - present)

        flaws = {"extras": len(present - requested) if requested else 0}
        dead = 0
        top = {c.component_type for c in script.components}
        if _MODIFIERS & top and not (_CARRIER_CLASSES & top):
            dead += 1
        if len(script.components) == 1:
            dead += 1  # bare class with nothing else: degenerate
        flaws["dead_logic"] = dead
        return theme, logic, flaws

    def _rule_features(self, request: str, script_text: str):
        rule, report = parse_rule(script_text, [])
        if report.outcome == "fizzled":
            return 0.0, 0.0, {"dead_logic": 2, "extras": 0}
        nodes = list(_rule_nodes(rule.actions))
        present = {n.node_type for n in nodes}
        executors = {n.node_type for n in nodes if n.node_type.startswith("do_")}
        theme_tokens = {rule.name} | executors
        theme_mentioned = {tok for tok in theme_tokens if tok in request}
        from spellforge.dsl import AUTOMATA_NODES

        requested = {name for name in AUTOMATA_NODES if name in request}
        requested_executors = {name for name in requested if name.startswith("do_")}
        logic_mentioned = {name for name in present if name in request}
        theme = self._jaccard(theme_mentioned, theme_tokens, requested_extra=requested_executors - executors)
        logic = self._jaccard(logic_mentioned, present, requested_extra=requested - present)

        dead = 0
        if not rule.actions:
            dead += 1
        for node in nodes:
            if node.takes_actions and node.node_type != "do_swap" and not node.actions:
                dead += 1
                break
        return theme, logic, {"extras": len(present - requested) if requested else 0, "dead_logic": dead}

    @staticmethod
    def _jaccard(mentioned: set, present: set, requested_extra: set) -> float:
        union = present | requested_extra
        if not union:
            return 1.0
        return len(mentioned) / len(union)
