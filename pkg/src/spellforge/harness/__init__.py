"""Experiment orchestration: plans, runners, records, reports."""

from .nl2dsl import load_corpus, run_nl2dsl
from .plan import ExperimentPlan
from .records import (
    RecordStore,
    load_records,
    normalize_for_comparison,
    records_equal_modulo_time,
)
from .registry import resolve_provider
from .reporting import report
from .roundtrip import run_roundtrip

__all__ = [
    "ExperimentPlan",
    "RecordStore",
    "load_corpus",
    "load_records",
    "normalize_for_comparison",
    "records_equal_modulo_time",
    "report",
    "resolve_provider",
    "run_nl2dsl",
    "run_roundtrip",
]
