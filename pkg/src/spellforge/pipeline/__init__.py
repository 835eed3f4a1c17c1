"""Prompt building, providers, and offline mocks."""

from .describe import DescribeError, describe_script
from .mocks import (
    AlwaysFailProvider,
    CannedProvider,
    CorruptorProvider,
    EchoDslProvider,
    PayloadDroppingProvider,
    StaticProvider,
    TemplateDescriber,
    ValidRuleProvider,
    ValidSpellProvider,
)
from .prompts import (
    DETAILS,
    SHOT_STRATEGIES,
    STYLES,
    TASKS,
    PromptSpec,
    build_prompt,
    fewshot_examples,
    render_node_registry,
    render_spell_registry,
)
from .providers import (
    Completion,
    HttpProvider,
    Provider,
    ProviderConfig,
    ProviderConfigError,
    ProviderError,
    ProviderResponse,
    RetryPolicy,
    generate,
    load_provider_configs,
)

__all__ = [
    "AlwaysFailProvider",
    "CannedProvider",
    "Completion",
    "CorruptorProvider",
    "DETAILS",
    "DescribeError",
    "EchoDslProvider",
    "HttpProvider",
    "PayloadDroppingProvider",
    "Provider",
    "ProviderConfig",
    "ProviderConfigError",
    "ProviderError",
    "ProviderResponse",
    "PromptSpec",
    "RetryPolicy",
    "SHOT_STRATEGIES",
    "STYLES",
    "StaticProvider",
    "TASKS",
    "TemplateDescriber",
    "ValidRuleProvider",
    "ValidSpellProvider",
    "build_prompt",
    "describe_script",
    "fewshot_examples",
    "generate",
    "load_provider_configs",
    "render_node_registry",
    "render_spell_registry",
]
