"""Judge prompt assembly: rubric, calibration, pre-check, output schema."""

from __future__ import annotations

from spellforge.dsl import ValidationReport

SCALES = ("creative_alignment", "instruction_following", "emergence", "structural_coherence")

JUDGE_HEADER = """Your primary role is to evaluate a JSON-based game script. You will act as a strict technical reviewer. This is a difficult logical and creative task, and most scripts will not achieve a perfect score.

First you will find the task rules the script was generated under, then the evaluation rubric, the required output schema for your own response, and finally the full task."""

RUBRIC = """You will evaluate the generated script on four axes, each scored from 1 (poor) to 5 (excellent). Evaluate critically.

creative_alignment (1-5): how well the script matches the core concept or theme of the request.
- 5: captured the core concept and all thematic details exactly.
- 3: recognizably related to the request but missing or distorting themes.
- 1: the script's core function is unrelated or opposite to the request.

instruction_following (1-5): how precisely the script obeys explicit commands and constraints in the request.
- 5: every explicit instruction implemented precisely.
- 3: some instructions followed, others ignored or altered.
- 1: explicit instructions ignored.

emergence (1-5): whether the script goes beyond the request in a positive, fitting way.
- 5: a significant unrequested addition that makes the concept better.
- 3: minor sensible additions.
- 1: a completely literal, uninspired translation.

structural_coherence (1-5): syntactic and logical validity of the script. This axis is informed by the algorithmic pre-check below. If the pre-check failed, this score cannot be higher than 2.
- 5: a single valid JSON object with perfect types and structure and no logical contradictions.
- 3: valid JSON with some type errors or rule conflicts that needed repair.
- 1: invalid JSON or major structural errors."""

CALIBRATION = """Calibration examples:
- Request "a slow heavy boulder" answered by a projectile with low speed, high gravity and a stone theme: creative_alignment 5, instruction_following 5, emergence 2, structural_coherence 5.
- Request "a healing rain" answered by a damaging fire area: creative_alignment 1, instruction_following 1, emergence 1, structural_coherence 5 (valid but wrong)."""

OUTPUT_SCHEMA = """You must respond with a single, valid JSON object and nothing else. Grade strictly; most responses should average 2-4, with 4s and 5s reserved for exceptional work.

The root object must contain two keys, in this exact order: "rationales" and "scores".
- "rationales": an object with a brief one-sentence explanation for each of the four axes.
- "scores": an object with an integer score (1-5) for each axis, keyed creative_alignment, instruction_following, emergence, structural_coherence."""


def render_precheck(precheck: ValidationReport) -> str:
    outcome = precheck.outcome
    if outcome == "accepted":
        return "Algorithmic pre-check: PASSED. The script parsed with no violations."
    if outcome == "repaired":
        return (
            f"Algorithmic pre-check: PASSED WITH REPAIRS. {len(precheck.violations)} violation(s) "
            f"were found and {len(precheck.repairs)} repair(s) applied."
        )
    return (
        "Algorithmic pre-check: FAILED. The script was unusable as submitted. "
        "The structural_coherence score cannot be higher than 2."
    )


def build_judge_prompt(
    dsl_kind: str,
    task_doc: str,
    user_input: str,
    script: str,
    precheck: ValidationReport,
) -> str:
    """Deterministic judge prompt. ``task_doc`` is the generation-task
    documentation for the matching DSL kind (see ``task_doc_for``)."""
    if dsl_kind not in ("spell", "automata"):
        raise ValueError(f"unknown dsl kind {dsl_kind!r}")
    return "\n\n".join(
        [
            JUDGE_HEADER,
            f"Task documentation ({dsl_kind} DSL):\n{task_doc}",
            RUBRIC,
            CALIBRATION,
            render_precheck(precheck),
            OUTPUT_SCHEMA,
            f"User request:\n{user_input}",
            f"Generated script:\n{script}",
        ]
    )


def task_doc_for(dsl_kind: str) -> str:
    from spellforge.pipeline.prompts import (
        AUTOMATA_INSTRUCTIONS,
        SPELL_INSTRUCTIONS,
        render_node_registry,
        render_spell_registry,
    )

    if dsl_kind == "spell":
        return SPELL_INSTRUCTIONS.format(registry=render_spell_registry())
    if dsl_kind == "automata":
        return AUTOMATA_INSTRUCTIONS.format(registry=render_node_registry())
    raise ValueError(f"unknown dsl kind {dsl_kind!r}")


def build_judge_prompt_from_context(context: dict) -> str:
    """Adapter for PromptSpec(task="judge") whose dynamic_context carries
    the judge inputs."""
    kind = context["dsl_kind"]
    return build_judge_prompt(
        dsl_kind=kind,
        task_doc=context.get("task_doc") or task_doc_for(kind),
        user_input=context["user_input"],
        script=context["script"],
        precheck=context["precheck"],
    )
