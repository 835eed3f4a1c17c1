"""Resolving plan provider entries to provider instances.

Entries are either bare names ("echo-dsl", "mock-spell-a") or objects
with a ``name`` plus parameters, e.g.
``{"name": "corrupt", "inner": "mock-rule", "rate": 0.18,
"modes": ["truncate"], "seed": 5}``.
"""

from __future__ import annotations

from typing import Any

from spellforge.judge import MockJudge
from spellforge.pipeline import (
    AlwaysFailProvider,
    CorruptorProvider,
    EchoDslProvider,
    HttpProvider,
    PayloadDroppingProvider,
    TemplateDescriber,
    ValidRuleProvider,
    ValidSpellProvider,
    load_provider_configs,
)


def resolve_provider(entry: Any, provider_config_path: str | None = None):
    if isinstance(entry, dict):
        name = entry["name"]
        if name == "corrupt":
            inner = resolve_provider(entry["inner"], provider_config_path)
            return CorruptorProvider(
                inner,
                rate=entry.get("rate", 1.0),
                modes=tuple(entry.get("modes", CorruptorProvider.MODES)),
                seed=entry.get("seed", 0),
            )
        if name == "live":
            if not provider_config_path:
                raise ValueError("live providers need a provider_config path in the plan")
            configs = load_provider_configs(provider_config_path)
            return HttpProvider(configs[entry["provider_id"]])
        raise ValueError(f"unknown parameterized provider {name!r}")

    name = str(entry)
    if name == "echo-dsl":
        return EchoDslProvider()
    if name == "payload-dropper":
        return PayloadDroppingProvider()
    if name == "template-describer":
        return TemplateDescriber()
    if name == "always-fail":
        return AlwaysFailProvider()
    if name == "mock-judge":
        return MockJudge()
    if name.startswith("mock-judge-"):
        import hashlib

        seed = int.from_bytes(hashlib.sha256(name.encode()).digest()[:4], "big")
        return MockJudge(provider_id=name, jitter_seed=seed)
    if name.startswith("mock-spell"):
        return ValidSpellProvider(provider_id=name)
    if name.startswith("mock-rule"):
        return ValidRuleProvider(provider_id=name)
    raise ValueError(f"unknown provider {name!r}")
