"""The committed good/bad ground-truth corpus and judge validation.

The corpus mirrors the validation geometry used to qualify the judge:
25 good and 25 bad spells, 15 good and 15 bad materials. Bad items are
corruptions of good ones (component replacement or truncation) paired
with the ORIGINAL description, so they are syntactically valid but
logically flawed.
"""

from __future__ import annotations

from dataclasses import dataclass

from spellforge.assets import data_json
from spellforge.dsl import parse_rule, parse_spell
from spellforge.pipeline.providers import Provider, RetryPolicy, generate

from .parsing import JudgementParse, parse_judgement
from .prompts import SCALES, build_judge_prompt, task_doc_for
from .stats import IRRReport, irr, roc_auc, wilcoxon_signed_rank


@dataclass(frozen=True)
class GroundTruthItem:
    item_id: str
    label: str  # good | bad
    dsl_kind: str  # spell | automata
    user_input: str
    document: str


def load_groundtruth() -> list[GroundTruthItem]:
    items = []
    for name in ("groundtruth_spells.json", "groundtruth_automata.json"):
        for entry in data_json(name):
            items.append(GroundTruthItem(**entry))
    return items


def judge_script(
    provider: Provider,
    dsl_kind: str,
    user_input: str,
    script_text: str,
    policy: RetryPolicy = RetryPolicy(),
) -> JudgementParse:
    """Full judge pass: pre-check, prompt, provider, parse."""
    if dsl_kind == "spell":
        _, precheck = parse_spell(script_text, [])
    else:
        _, precheck = parse_rule(script_text, [])
    prompt = build_judge_prompt(dsl_kind, task_doc_for(dsl_kind), user_input, script_text, precheck)
    response = generate(provider, prompt, policy)
    if response.failed:
        return JudgementParse(failed=True, failure_reason="provider failure")
    return parse_judgement(response.raw_text)


@dataclass
class JudgeValidation:
    per_scale: dict
    judge_failures: int
    n_good: int
    n_bad: int
    irr_per_scale: dict[str, IRRReport] | None = None


def validate_judge(
    provider: Provider,
    items: list[GroundTruthItem] | None = None,
    second_provider: Provider | None = None,
) -> JudgeValidation:
    """Score the ground-truth corpus and compute the qualification
    statistics: per-scale means, Wilcoxon on paired good-bad differences,
    AUC and best F1, plus inter-rater agreement when a second judge is
    supplied. Judge failures are excluded from aggregates and counted."""
    items = items if items is not None else load_groundtruth()
    scored: dict[str, dict] = {}
    failures = 0
    second: dict[str, JudgeScoresPair] = {}
    for item in items:
        parse = judge_script(provider, item.dsl_kind, item.user_input, item.document)
        if parse.failed or parse.scores is None:
            failures += 1
            continue
        scored[item.item_id] = {"item": item, "scores": parse.scores.as_dict()}
        if second_provider is not None:
            other = judge_script(second_provider, item.dsl_kind, item.user_input, item.document)
            if not other.failed and other.scores is not None:
                second[item.item_id] = other.scores.as_dict()

    goods = [r for r in scored.values() if r["item"].label == "good"]
    bads = [r for r in scored.values() if r["item"].label == "bad"]
    per_scale = {}
    for scale in SCALES:
        good_scores = [r["scores"][scale] for r in goods]
        bad_scores = [r["scores"][scale] for r in bads]
        stats: dict = {
            "good_mean": sum(good_scores) / len(good_scores) if good_scores else None,
            "bad_mean": sum(bad_scores) / len(bad_scores) if bad_scores else None,
        }
        # paired by construction: bad_i corrupts good_i
        pairs = _paired_diffs(scored, scale)
        if len([d for d in pairs if d != 0]) >= 5:
            w = wilcoxon_signed_rank(pairs)
            stats["wilcoxon_v"], stats["wilcoxon_p"] = w.v, w.p
        scores = [r["scores"][scale] for r in scored.values()]
        labels = [r["item"].label for r in scored.values()]
        auc = roc_auc(scores, labels)
        stats["auc"], stats["best_f1"] = auc.auc, auc.best_f1
        per_scale[scale] = stats

    irr_per_scale = None
    if second_provider is not None and second:
        irr_per_scale = {}
        shared = [iid for iid in scored if iid in second]
        for scale in SCALES:
            a = [scored[iid]["scores"][scale] for iid in shared]
            b = [second[iid][scale] for iid in shared]
            irr_per_scale[scale] = irr(a, b)

    return JudgeValidation(
        per_scale=per_scale,
        judge_failures=failures,
        n_good=len(goods),
        n_bad=len(bads),
        irr_per_scale=irr_per_scale,
    )


def _paired_diffs(scored: dict, scale: str) -> list[float]:
    diffs = []
    for iid, record in scored.items():
        if record["item"].label != "good":
            continue
        bad_id = iid.replace("good", "bad")
        if bad_id in scored:
            diffs.append(record["scores"][scale] - scored[bad_id]["scores"][scale])
    return diffs


JudgeScoresPair = dict
