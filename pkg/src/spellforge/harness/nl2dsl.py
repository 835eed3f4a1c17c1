"""Experiment 1: natural language to DSL, fully crossed factor grid."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from spellforge.assets import data_json
from spellforge.dsl import canonicalize, parse_rule, parse_spell
from spellforge.judge import judge_script
from spellforge.pipeline import PromptSpec, build_prompt, generate

from .plan import ExperimentPlan
from .records import RecordStore, utc_now
from .registry import resolve_provider


def load_corpus(plan: ExperimentPlan) -> list[dict]:
    if plan.corpus == "builtin":
        return data_json(f"corpus_{plan.dsl_kind}.json")
    path = Path(plan.corpus)
    if path.exists():
        import json

        return json.loads(path.read_text("utf-8"))
    return data_json(plan.corpus)


def _provider_label(entry) -> str:
    if isinstance(entry, dict):
        inner = entry.get("inner", entry.get("provider_id", ""))
        return f"{entry['name']}({inner})"
    return str(entry)


def run_nl2dsl(plan: ExperimentPlan, out_dir: str | Path) -> list[dict]:
    """Run every (input x shot x cot x provider) cell; returns all records
    including any from a previous partial run (idempedent by trial id)."""
    if plan.experiment != "nl2dsl":
        raise ValueError("plan is not an nl2dsl plan")
    store = RecordStore(out_dir)
    corpus = load_corpus(plan)
    judge_provider = resolve_provider(plan.judge, plan.provider_config) if plan.judge else None

    trials = []
    for entry in plan.providers:
        provider = resolve_provider(entry, plan.provider_config)
        label = _provider_label(entry)
        for shot in plan.shot_strategies:
            for cot in plan.cot:
                for item in corpus:
                    trial_id = (
                        f"nl2dsl:{plan.dsl_kind}:{label}:{shot}:{'cot' if cot else 'std'}:{item['id']}"
                    )
                    trials.append((trial_id, provider, label, shot, cot, item))

    def execute(trial):
        trial_id, provider, label, shot, cot, item = trial
        spec = PromptSpec(
            task=plan.dsl_kind,
            shot_strategy=shot,
            cot=cot,
            dynamic_context=plan.elements if plan.dsl_kind == "spell" else [],
            user_input=item["text"],
        )
        prompt = build_prompt(spec)
        response = generate(provider, prompt, request_id=trial_id)
        if plan.dsl_kind == "spell":
            script, report = parse_spell(response.raw_text, plan.elements)
        else:
            script, report = parse_rule(response.raw_text, [])
        canonical = canonicalize(script)
        asr_valid = (not response.failed) and report.outcome in ("accepted", "repaired")

        judge_payload = None
        if judge_provider is not None and asr_valid:
            parse = judge_script(judge_provider, plan.dsl_kind, item["text"], canonical)
            judge_payload = {
                "failed": parse.failed,
                "scores": parse.scores.as_dict() if parse.scores else None,
                "transcript": parse.raw_text,
            }

        return {
            "trial_id": trial_id,
            "experiment": "nl2dsl",
            "condition": {"provider": label, "shot": shot, "cot": cot, "dsl_kind": plan.dsl_kind},
            "input_id": item["id"],
            "user_input": item["text"],
            "raw_output": response.raw_text,
            "validation": report.to_dict(),
            "script": canonical,
            "asr_valid": asr_valid,
            "judge": judge_payload,
            "latency": response.latency,
            "request_id": response.request_id,
            "timestamp": utc_now(),
        }

    pending = [t for t in trials if t[0] not in store]
    if pending:
        with ThreadPoolExecutor(max_workers=plan.max_concurrency) as pool:
            for record in pool.map(execute, pending):
                store.append(record)
    return store.records
