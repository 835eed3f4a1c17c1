"""Deterministic offline providers.

Every mock reports zero latency and derives all randomness from the
prompt content, so a rerun of any experiment produces byte-identical
records without network access.
"""

from __future__ import annotations

import hashlib
import re

from spellforge.dsl import (
    SpellComponent,
    SpellScript,
    canonical_json,
    canonicalize_spell,
    extract_last_payload,
    parse_spell,
)
from spellforge.metrics import GenConfig, gen_random_script
from spellforge.rng import Stream

from .providers import Completion, ProviderError


def _digest_int(text: str) -> int:
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


class CannedProvider:
    """echo-fixture: canned outputs keyed by the prompt's content digest,
    with an optional deterministic fallback for unkeyed prompts."""

    def __init__(self, fixtures: dict[str, str] | None = None, default_factory=None, provider_id="echo-fixture"):
        self.provider_id = provider_id
        self.fixtures = dict(fixtures or {})
        self.default_factory = default_factory

    @staticmethod
    def key_for(prompt: str) -> str:
        return hashlib.sha256(prompt.encode()).hexdigest()

    def complete(self, prompt: str) -> Completion:
        key = self.key_for(prompt)
        if key in self.fixtures:
            return Completion(text=self.fixtures[key], latency=0.0)
        if self.default_factory is not None:
            return Completion(text=self.default_factory(prompt), latency=0.0)
        raise ProviderError(f"no fixture for prompt digest {key[:12]}")


class EchoDslProvider:
    """echo-dsl: returns the canonicalized last JSON object embedded in
    the prompt. With describe prompts that carry the script last, and
    regeneration prompts whose user input is that same document, this
    closes a perfect round trip."""

    provider_id = "echo-dsl"

    def complete(self, prompt: str) -> Completion:
        payload = extract_last_payload(prompt)
        if not payload:
            return Completion(text="", latency=0.0)
        try:
            import json

            text = canonical_json(json.loads(payload))
        except ValueError:
            text = payload
        return Completion(text=text, latency=0.0)


class PayloadDroppingProvider:
    """Degraded regenerator: echoes the embedded script minus every
    trigger component (and with it the whole nested payload)."""

    provider_id = "payload-dropper"

    def complete(self, prompt: str) -> Completion:
        payload = extract_last_payload(prompt)
        script, report = parse_spell(payload, [])
        if report.outcome == "fizzled":
            return Completion(text="", latency=0.0)
        kept = [c for c in script.components if not c.is_trigger]
        degraded = SpellScript(script.friendly_name, script.count, kept)
        return Completion(text=canonicalize_spell(degraded), latency=0.0)


_ELEMENTS_LINE_RE = re.compile(r"^Magical elements currently in play: (.+)$", re.MULTILINE)


class ValidSpellProvider:
    """Always returns a valid, prompt-keyed random spell document,
    grounded to the element list announced in the prompt."""

    def __init__(self, provider_id="mock-spell"):
        self.provider_id = provider_id

    def complete(self, prompt: str) -> Completion:
        seed = _digest_int(self.provider_id + prompt)
        match = _ELEMENTS_LINE_RE.search(prompt)
        config = GenConfig(seed=seed, max_depth=2)
        if match and match.group(1) != "(none)":
            config = GenConfig(seed=seed, max_depth=2, elements=tuple(match.group(1).split(", ")))
        script = gen_random_script(config)
        return Completion(text=canonicalize_spell(script), latency=0.0)


_RULE_TEMPLATES = (
    '{{"name":"{name}","color_hex":"{color}","behavior":{{"actions":[{{"type":"if_neighbor_is","direction":"south","options":["air"],"actions":[{{"type":"do_swap","direction":"south"}}]}}]}}}}',
    '{{"name":"{name}","color_hex":"{color}","behavior":{{"actions":[{{"type":"in_rand_rotation","actions":[{{"type":"if_neighbor_is","direction":"south","options":["air"],"actions":[{{"type":"do_swap","direction":"south"}}]}}]}}]}}}}',
    '{{"name":"{name}","color_hex":"{color}","behavior":{{"actions":[{{"type":"if_chance","p":0.25,"actions":[{{"type":"do_set_alpha","value":128}}]}},{{"type":"if_neighbor_is","direction":"north","options":["air"],"actions":[{{"type":"do_swap","direction":"north"}}]}}]}}}}',
)


class ValidRuleProvider:
    """Always returns a valid, prompt-keyed material document."""

    def __init__(self, provider_id="mock-rule"):
        self.provider_id = provider_id

    def complete(self, prompt: str) -> Completion:
        rng = Stream(_digest_int(self.provider_id + prompt))
        name = "".join(chr(ord("a") + rng.below(26)) for _ in range(6))
        color = "#%06X" % rng.below(1 << 24)
        template = _RULE_TEMPLATES[rng.below(len(_RULE_TEMPLATES))]
        return Completion(text=template.format(name=name, color=color), latency=0.0)


class TemplateDescriber:
    """Oracle mock for describe_script: a deterministic template
    rendering of the script embedded in the describe prompt."""

    provider_id = "template-describer"

    _STYLE_RE = re.compile(r"^Style: (narrative|technical)$", re.MULTILINE)
    _DETAIL_RE = re.compile(r"^Detail: (summary|detailed)$", re.MULTILINE)

    _NUMBER_WORDS = {0: "zero", 1: "one", 2: "two", 3: "three", 4: "four", 5: "five"}

    def complete(self, prompt: str) -> Completion:
        style = self._STYLE_RE.search(prompt)
        detail = self._DETAIL_RE.search(prompt)
        payload = extract_last_payload(prompt)
        script, report = parse_spell(payload, [])
        if not style or not detail or report.outcome == "fizzled":
            raise ProviderError("describe prompt not recognized")
        return Completion(text=self.render(script, style.group(1), detail.group(1)), latency=0.0)

    def render(self, script: SpellScript, style: str, detail: str) -> str:
        klass = script.class_component()
        elements = sorted(
            {c.params.get("element") for c in self._walk(script.components) if c.component_type == "element"}
        )
        if style == "technical":
            if detail == "summary":
                return f'Technical summary: "{script.friendly_name}" is built around a single {klass.component_type} form.'
            lines = [f'Technical specification for "{script.friendly_name}" (count {script.count}):']
            lines.extend(self._spec_lines(script.components, level=0))
            return "\n".join(lines)
        # narrative: flavourful, strictly no numerals
        flavour = " and ".join(elements) if elements else "arcane"
        if detail == "summary":
            return (
                f'They call it "{script.friendly_name}": a {flavour} working shaped as a {klass.component_type},'
                " loosed in a single breath."
            )
        parts = [c.component_type for c in self._walk(script.components)]
        listing = ", ".join(parts)
        return (
            f'The grimoire names it "{script.friendly_name}", a {flavour} working woven from {listing};'
            " each layer waits beneath the last, patient as weather."
        )

    def _walk(self, components):
        for c in components:
            yield c
            yield from self._walk(c.payload_components)

    def _spec_lines(self, components, level):
        lines = []
        pad = "  " * level
        for c in components:
            params = ", ".join(f"{k} {canonical_json(v)}" for k, v in sorted(c.params.items()))
            lines.append(f"{pad}- {c.component_type}" + (f" with {params}" if params else ""))
            if c.payload_components:
                lines.append(f"{pad}  payload:")
                lines.extend(self._spec_lines(c.payload_components, level + 2))
        return lines


class CorruptorProvider:
    """Seeded fault injection around any inner provider.

    Modes: markdown fences with chatter, prose wrapping, and tail
    truncation. Corruption is keyed by the prompt digest so reruns are
    identical.
    """

    MODES = ("fences", "prose", "truncate")

    def __init__(self, inner, rate: float = 1.0, modes=("fences", "prose", "truncate"), seed: int = 0):
        unknown = set(modes) - set(self.MODES)
        if unknown:
            raise ValueError(f"unknown corruption modes: {sorted(unknown)}")
        self.inner = inner
        self.rate = rate
        self.modes = tuple(modes)
        self.seed = seed
        self.provider_id = f"corrupt({inner.provider_id})"

    def complete(self, prompt: str) -> Completion:
        completion = self.inner.complete(prompt)
        rng = Stream(self.seed, _digest_int(prompt))
        if rng.random() >= self.rate:
            return completion
        mode = self.modes[rng.below(len(self.modes))]
        text = completion.text
        if mode == "fences":
            text = f"Sure thing! Here is the script you asked for:\n```json\n{text}\n```\nLet me know if you want tweaks."
        elif mode == "prose":
            text = f"Here is the spell you asked for: {text} -- enjoy!"
        else:
            text = text[: int(len(text) * 0.55)]
        return Completion(text=text, latency=0.0)


class AlwaysFailProvider:
    """Hard transport failure on every call; exercises retry exhaustion."""

    provider_id = "always-fail"

    def complete(self, prompt: str) -> Completion:
        raise ProviderError("synthetic transport failure")


class StaticProvider:
    """Returns one fixed text for every prompt."""

    def __init__(self, text: str, provider_id: str = "static"):
        self.text = text
        self.provider_id = provider_id

    def complete(self, prompt: str) -> Completion:
        return Completion(text=self.text, latency=0.0)


_REQUEST_TAIL_RE = re.compile(r"Request: (.+)\Z", re.DOTALL)


def _last_request(prompt: str) -> str | None:
    if "Request: " not in prompt:
        return None
    return prompt.rsplit("Request: ", 1)[-1]


class GameMockProvider:
    """Session mock for the live game service: answers spell and material
    prompts alike, with canned outputs for the documented fixtures and a
    valid prompt-keyed document otherwise."""

    provider_id = "mock"

    def __init__(self):
        from spellforge.assets import golden

        self._spells = ValidSpellProvider(provider_id="mock")
        self._rules = ValidRuleProvider(provider_id="mock")
        self._canned = {
            "a controllable wind pixie that warps me when i call": golden("wind_scout.json"),
            "wind scout": golden("wind_scout.json"),
            "a cloudy gas that diffuses randomly": golden("gas.json"),
        }

    def complete(self, prompt: str) -> Completion:
        request = _last_request(prompt)
        if request is not None:
            key = request.strip().strip(".!").lower()
            if key in self._canned:
                return Completion(text=self._canned[key], latency=0.0)
        if "cellular automata" in prompt[:200]:
            return self._rules.complete(prompt)
        return self._spells.complete(prompt)
