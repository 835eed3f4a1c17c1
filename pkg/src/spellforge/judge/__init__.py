"""Automated qualitative assessment and its validation statistics."""

from .groundtruth import (
    GroundTruthItem,
    JudgeValidation,
    judge_script,
    load_groundtruth,
    validate_judge,
)
from .mock import MockJudge
from .parsing import JudgementParse, JudgeScores, parse_judgement
from .prompts import SCALES, build_judge_prompt, render_precheck, task_doc_for
from .stats import (
    AucResult,
    IRRReport,
    WilcoxonResult,
    icc_2_1,
    irr,
    roc_auc,
    spearman_rho,
    weighted_kappa,
    wilcoxon_signed_rank,
)

__all__ = [
    "AucResult",
    "GroundTruthItem",
    "IRRReport",
    "JudgeScores",
    "JudgeValidation",
    "JudgementParse",
    "MockJudge",
    "SCALES",
    "WilcoxonResult",
    "build_judge_prompt",
    "icc_2_1",
    "irr",
    "judge_script",
    "load_groundtruth",
    "parse_judgement",
    "render_precheck",
    "roc_auc",
    "spearman_rho",
    "task_doc_for",
    "validate_judge",
    "weighted_kappa",
    "wilcoxon_signed_rank",
]
