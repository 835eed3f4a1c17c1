"""Model providers: a pluggable completion interface with retries.

Live providers speak an OpenAI-compatible chat endpoint over HTTP with
credentials taken from the environment; the offline mocks in
``spellforge.pipeline.mocks`` implement the same interface so the whole
test suite and both experiments run without network access.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Protocol

import httpx


class ProviderError(Exception):
    """Transport-level failure; retried up to the policy limit."""


class ProviderConfigError(Exception):
    """Misconfiguration; raised before any network call, never retried."""


@dataclass
class Completion:
    text: str
    latency: float | None = None  # None: measured by generate()
    token_counts: dict | None = None


class Provider(Protocol):
    provider_id: str

    def complete(self, prompt: str) -> Completion: ...


@dataclass
class ProviderResponse:
    raw_text: str
    latency: float
    provider_id: str
    request_id: str
    token_counts: dict | None = None
    failed: bool = False


@dataclass(frozen=True)
class RetryPolicy:
    max_retries: int = 2
    backoff_base: float = 0.5
    timeout: float = 60.0


_request_counter = 0


def _next_request_id(prompt: str) -> str:
    global _request_counter
    _request_counter += 1
    return f"req-{hashlib.sha256(prompt.encode()).hexdigest()[:12]}-{_request_counter:06d}"


def generate(
    provider: Provider,
    prompt: str,
    policy: RetryPolicy = RetryPolicy(),
    request_id: str | None = None,
) -> ProviderResponse:
    """First successful completion, retrying transport failures with
    exponential backoff. Exhaustion yields an empty response flagged
    failed (downstream turns it into a fizzle), never an exception."""
    rid = request_id if request_id is not None else _next_request_id(prompt)
    attempts = policy.max_retries + 1
    for attempt in range(attempts):
        started = time.perf_counter()
        try:
            completion = provider.complete(prompt)
        except ProviderError:
            if attempt + 1 < attempts and policy.backoff_base > 0:
                time.sleep(policy.backoff_base * (2**attempt))
            continue
        latency = completion.latency if completion.latency is not None else time.perf_counter() - started
        return ProviderResponse(
            raw_text=completion.text,
            latency=latency,
            provider_id=provider.provider_id,
            request_id=rid,
            token_counts=completion.token_counts,
        )
    return ProviderResponse(raw_text="", latency=0.0, provider_id=provider.provider_id, request_id=rid, failed=True)


@dataclass(frozen=True)
class ProviderConfig:
    provider_id: str
    endpoint: str
    model: str
    credential_env: str
    max_concurrency: int = 4
    timeout: float = 60.0
    temperature: float = 0.7


def load_provider_configs(path: str | Path) -> dict[str, ProviderConfig]:
    """Provider config file, JSON or TOML, keyed by provider id."""
    path = Path(path)
    text = path.read_text("utf-8")
    if path.suffix == ".toml":
        try:
            import tomllib  # Python 3.11+
        except ModuleNotFoundError:
            import tomli as tomllib
        raw = tomllib.loads(text)
    else:
        raw = json.loads(text)
    configs = {}
    for entry in raw.get("providers", []):
        cfg = ProviderConfig(**entry)
        configs[cfg.provider_id] = cfg
    return configs


class HttpProvider:
    """OpenAI-compatible chat-completions client.

    The credential is read from the configured environment variable at
    construction; a missing credential is a configuration error raised
    before any request goes out.
    """

    def __init__(self, config: ProviderConfig, transport: httpx.BaseTransport | None = None):
        self.provider_id = config.provider_id
        self.config = config
        key = os.environ.get(config.credential_env, "")
        if not key:
            raise ProviderConfigError(
                f"provider {config.provider_id!r}: credential env {config.credential_env!r} is not set"
            )
        self._client = httpx.Client(
            base_url=config.endpoint,
            headers={"Authorization": f"Bearer {key}"},
            timeout=config.timeout,
            transport=transport,
        )

    def complete(self, prompt: str) -> Completion:
        body = {
            "model": self.config.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": self.config.temperature,
        }
        try:
            response = self._client.post("/chat/completions", json=body)
            response.raise_for_status()
            doc = response.json()
            text = doc["choices"][0]["message"]["content"]
        except (httpx.HTTPError, KeyError, IndexError, ValueError) as exc:
            raise ProviderError(str(exc)) from exc
        usage = doc.get("usage")
        return Completion(text=text, token_counts=usage)
