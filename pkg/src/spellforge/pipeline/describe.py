"""Forward translation: script to natural-language description."""

from __future__ import annotations

from spellforge.dsl import SpellScript

from .prompts import DETAILS, STYLES, PromptSpec, build_prompt
from .providers import Provider, ProviderResponse, RetryPolicy, generate


class DescribeError(Exception):
    """Forward-pass failure; round-trip trials record these as skipped."""


def describe_script(
    provider: Provider,
    script: SpellScript,
    style: str = "technical",
    detail: str = "detailed",
    policy: RetryPolicy = RetryPolicy(),
    request_id: str | None = None,
) -> str:
    if style not in STYLES or detail not in DETAILS:
        raise ValueError(f"unknown style/detail: {style!r}/{detail!r}")
    prompt = build_prompt(
        PromptSpec(task="describe", dynamic_context={"script": script, "style": style, "detail": detail})
    )
    response: ProviderResponse = generate(provider, prompt, policy, request_id=request_id)
    if response.failed or not response.raw_text.strip():
        raise DescribeError(f"provider {provider.provider_id} produced no description")
    return response.raw_text
