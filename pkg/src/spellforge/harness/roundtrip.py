"""Experiment 2: script -> description -> script round trip, 2x2."""

from __future__ import annotations

from pathlib import Path

from spellforge.dsl import canonicalize, parse_spell
from spellforge.metrics import GenConfig, complexity, gen_random_script, jaccard_components, ted, to_tree
from spellforge.pipeline import DescribeError, PromptSpec, build_prompt, describe_script, generate

from .plan import ExperimentPlan
from .records import RecordStore, utc_now
from .registry import resolve_provider


def run_roundtrip(plan: ExperimentPlan, out_dir: str | Path) -> list[dict]:
    """30 procedurally generated sources through describe-then-regenerate
    across style x detail cells. Forward-pass failures are skipped with
    an audit entry; every other trial produces a record."""
    if plan.experiment != "roundtrip":
        raise ValueError("plan is not a roundtrip plan")
    store = RecordStore(out_dir)
    regen_provider = resolve_provider(plan.providers[0], plan.provider_config)
    describe_entry = plan.describe_provider if plan.describe_provider is not None else plan.providers[0]
    describe_provider = resolve_provider(describe_entry, plan.provider_config)
    label = plan.providers[0] if isinstance(plan.providers[0], str) else plan.providers[0]["name"]

    sources = {seed: gen_random_script(GenConfig(seed=seed)) for seed in plan.source_seeds}

    for seed in plan.source_seeds:
        source = sources[seed]
        source_doc = canonicalize(source)
        source_tree = to_tree(source_doc)
        profile = complexity(source)
        for style in plan.styles:
            for detail in plan.details:
                trial_id = f"roundtrip:{label}:{style}:{detail}:src{seed:03d}"
                if trial_id in store:
                    continue
                try:
                    description = describe_script(describe_provider, source, style, detail)
                except DescribeError as exc:
                    store.audit(
                        {
                            "trial_id": trial_id,
                            "status": "skipped",
                            "reason": str(exc),
                            "timestamp": utc_now(),
                        }
                    )
                    continue
                prompt = build_prompt(
                    PromptSpec(
                        task="spell",
                        shot_strategy="zero",
                        cot=False,
                        dynamic_context=plan.elements,
                        user_input=description,
                    )
                )
                response = generate(regen_provider, prompt, request_id=trial_id)
                regenerated, report = parse_spell(response.raw_text, plan.elements)
                regen_doc = canonicalize(regenerated)
                store.append(
                    {
                        "trial_id": trial_id,
                        "experiment": "roundtrip",
                        "condition": {"provider": str(label), "style": style, "detail": detail},
                        "source_seed": seed,
                        "source_script": source_doc,
                        "description": description,
                        "raw_output": response.raw_text,
                        "validation": report.to_dict(),
                        "script": regen_doc,
                        "asr_valid": (not response.failed) and report.outcome in ("accepted", "repaired"),
                        "ted": ted(source_tree, to_tree(regen_doc)),
                        "jaccard": jaccard_components(source, regenerated),
                        "source_complexity": {
                            "component_complexity": profile.component_complexity,
                            "nesting_complexity": profile.nesting_complexity,
                        },
                        "latency": response.latency,
                        "request_id": response.request_id,
                        "timestamp": utc_now(),
                    }
                )
    return store.records
