"""Experiment plans: the full factor grid for one run, loadable from
JSON or TOML."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from spellforge.metrics import ELEMENT_POOL

EXPERIMENTS = ("nl2dsl", "roundtrip")


@dataclass
class ExperimentPlan:
    experiment: str
    providers: list[Any]  # names or {name:..., ...} parameterized entries
    dsl_kind: str = "spell"
    corpus: str = "builtin"
    shot_strategies: list[str] = field(default_factory=lambda: ["zero", "one", "few"])
    cot: list[bool] = field(default_factory=lambda: [False, True])
    styles: list[str] = field(default_factory=lambda: ["narrative", "technical"])
    details: list[str] = field(default_factory=lambda: ["summary", "detailed"])
    source_seeds: list[int] = field(default_factory=lambda: list(range(30)))
    describe_provider: Any = None  # roundtrip forward pass; defaults to providers[0]
    judge: Any = None  # provider entry, or None to skip judging
    elements: list[str] = field(default_factory=lambda: list(ELEMENT_POOL))
    seed: int = 0
    max_concurrency: int = 4
    provider_config: str | None = None

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if self.dsl_kind not in ("spell", "automata"):
            raise ValueError(f"unknown dsl kind {self.dsl_kind!r}")
        if not self.providers:
            raise ValueError("plan needs at least one provider")

    @classmethod
    def load(cls, path: str | Path) -> "ExperimentPlan":
        path = Path(path)
        text = path.read_text("utf-8")
        if path.suffix == ".toml":
            try:
                import tomllib
            except ModuleNotFoundError:
                import tomli as tomllib
            raw = tomllib.loads(text)
        else:
            raw = json.loads(text)
        return cls(**raw)
