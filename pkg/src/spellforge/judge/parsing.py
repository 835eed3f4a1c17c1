"""Parsing judge responses: rationales first, then four 1-5 scores.

Like the DSL parsers this never raises on bad input; a response missing
a scale is marked judge-failed and excluded from aggregates upstream.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from spellforge.dsl import extract_payload
from spellforge.dsl.report import Repair
from spellforge.dsl.values import is_number

from .prompts import SCALES


@dataclass(frozen=True)
class JudgeScores:
    creative_alignment: int
    instruction_following: int
    emergence: int
    structural_coherence: int

    def as_dict(self) -> dict[str, int]:
        return {scale: getattr(self, scale) for scale in SCALES}


@dataclass
class JudgementParse:
    rationales: dict[str, str] = field(default_factory=dict)
    scores: JudgeScores | None = None
    repairs: list[Repair] = field(default_factory=list)
    failed: bool = False
    failure_reason: str = ""
    raw_text: str = ""  # verbatim transcript, persisted for audit


def _failed(reason: str, raw_text: str = "") -> JudgementParse:
    return JudgementParse(failed=True, failure_reason=reason, raw_text=raw_text)


def parse_judgement(raw_text: str) -> JudgementParse:
    if not isinstance(raw_text, str):
        raw_text = ""
    payload = extract_payload(raw_text)
    if not payload:
        return _failed("no JSON object in judge response", raw_text)
    try:
        doc = json.loads(payload)
    except (ValueError, RecursionError):
        return _failed("judge response is not valid JSON", raw_text)
    if not isinstance(doc, dict):
        return _failed("judge response is not an object", raw_text)
    raw_scores = doc.get("scores")
    if not isinstance(raw_scores, dict):
        return _failed("scores key missing", raw_text)
    raw_rationales = doc.get("rationales")
    if not isinstance(raw_rationales, dict):
        return _failed("rationales key missing", raw_text)

    repairs: list[Repair] = []
    values: dict[str, int] = {}
    for scale in SCALES:
        value = raw_scores.get(scale)
        if not is_number(value):
            return _failed(f"scale {scale} missing or not numeric", raw_text)
        score = int(round(value))
        if score != value:
            repairs.append(Repair(f"scores.{scale}", "clamped", value, score))
        clamped = min(max(score, 1), 5)
        if clamped != score:
            repairs.append(Repair(f"scores.{scale}", "clamped", score, clamped))
        values[scale] = clamped

    rationales = {k: str(v) for k, v in raw_rationales.items()}
    return JudgementParse(rationales=rationales, scores=JudgeScores(**values), repairs=repairs, raw_text=raw_text)
