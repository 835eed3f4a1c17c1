"""Summary tables over trial records, human- and machine-readable."""

from __future__ import annotations

from spellforge.judge import SCALES


def _cell_key(record: dict) -> tuple:
    condition = record["condition"]
    if record["experiment"] == "nl2dsl":
        return (condition["provider"], condition["shot"], condition["cot"])
    return (condition["style"], condition["detail"])


def _format_pct(valid: int, total: int) -> str:
    return str(round(100 * valid / total)) if total else "-"


def report(records: list[dict]) -> dict:
    """Aggregate one experiment's records.

    nl2dsl: ASR percent and judge-score means per (provider, shot, cot)
    cell. roundtrip: mean tree edit distance and Jaccard per
    (style, detail) cell. Returns {"experiment", "data", "text"}.
    """
    if not records:
        raise ValueError("no records to report")
    experiments = {r["experiment"] for r in records}
    if len(experiments) > 1:
        raise ValueError(f"mixed-experiment record sets are not reportable: {sorted(experiments)}")
    experiment = experiments.pop()
    return _report_nl2dsl(records) if experiment == "nl2dsl" else _report_roundtrip(records)


def _report_nl2dsl(records: list[dict]) -> dict:
    cells: dict[tuple, dict] = {}
    for record in records:
        cell = cells.setdefault(
            _cell_key(record),
            {"n": 0, "valid": 0, "judge_n": 0, "judge_sums": {s: 0.0 for s in SCALES}, "judge_failed": 0},
        )
        cell["n"] += 1
        cell["valid"] += bool(record["asr_valid"])
        judge = record.get("judge")
        if judge:
            if judge.get("failed") or not judge.get("scores"):
                cell["judge_failed"] += 1
            else:
                cell["judge_n"] += 1
                for scale in SCALES:
                    cell["judge_sums"][scale] += judge["scores"][scale]

    data = {"experiment": "nl2dsl", "cells": []}
    lines = ["ASR (% syntactically valid after repair) by provider / shot / planning", ""]
    lines.append(f"{'provider':28s} {'shot':6s} {'cot':5s} {'ASR':>5s} {'n':>5s}  judge means")
    for key in sorted(cells):
        provider, shot, cot = key
        cell = cells[key]
        asr = 100 * cell["valid"] / cell["n"]
        means = {s: (cell["judge_sums"][s] / cell["judge_n"] if cell["judge_n"] else None) for s in SCALES}
        data["cells"].append(
            {
                "provider": provider,
                "shot": shot,
                "cot": cot,
                "n": cell["n"],
                "valid": cell["valid"],
                "asr_percent": asr,
                "asr_rendered": _format_pct(cell["valid"], cell["n"]),
                "judge_n": cell["judge_n"],
                "judge_failed": cell["judge_failed"],
                "judge_means": means,
            }
        )
        mean_text = (
            " ".join(f"{s.split('_')[0][:4]}={means[s]:.2f}" for s in SCALES) if cell["judge_n"] else "(unjudged)"
        )
        lines.append(
            f"{provider:28s} {shot:6s} {str(cot):5s} {_format_pct(cell['valid'], cell['n']):>5s} {cell['n']:>5d}  {mean_text}"
        )
    overall_valid = sum(c["valid"] for c in cells.values())
    overall_n = sum(c["n"] for c in cells.values())
    data["overall"] = {"n": overall_n, "valid": overall_valid, "asr_percent": 100 * overall_valid / overall_n}
    lines += ["", f"overall ASR: {_format_pct(overall_valid, overall_n)} ({overall_valid}/{overall_n})"]
    data["text"] = "\n".join(lines)
    return data


def _report_roundtrip(records: list[dict]) -> dict:
    cells: dict[tuple, dict] = {}
    for record in records:
        cell = cells.setdefault(_cell_key(record), {"n": 0, "ted_sum": 0.0, "jaccard_sum": 0.0})
        cell["n"] += 1
        cell["ted_sum"] += record["ted"]
        cell["jaccard_sum"] += record["jaccard"]

    data = {"experiment": "roundtrip", "cells": []}
    lines = ["Round-trip fidelity by style / detail", ""]
    lines.append(f"{'style':10s} {'detail':9s} {'mean TED':>9s} {'mean Jaccard':>13s} {'n':>4s}")
    for key in sorted(cells):
        style, detail = key
        cell = cells[key]
        mean_ted = cell["ted_sum"] / cell["n"]
        mean_jaccard = cell["jaccard_sum"] / cell["n"]
        data["cells"].append(
            {"style": style, "detail": detail, "n": cell["n"], "mean_ted": mean_ted, "mean_jaccard": mean_jaccard}
        )
        lines.append(f"{style:10s} {detail:9s} {mean_ted:>9.2f} {mean_jaccard:>13.3f} {cell['n']:>4d}")
    data["text"] = "\n".join(lines)
    return data
