"""Trial records: append-only JSON-lines persistence with resumability.

Records are immutable once written; rerunning a plan skips trial ids
already present. With mock providers a fresh complete run is
byte-identical to any other after timestamp normalization.
"""

from __future__ import annotations

import datetime as _dt
import json
from pathlib import Path
from typing import Any, Iterable

from spellforge.dsl import canonical_json

RECORDS_FILE = "records.jsonl"
AUDIT_FILE = "audit.jsonl"


def utc_now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat()


class RecordStore:
    """Single-writer JSONL store keyed by trial_id."""

    def __init__(self, out_dir: str | Path):
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self.records_path = self.out_dir / RECORDS_FILE
        self.audit_path = self.out_dir / AUDIT_FILE
        self._seen: set[str] = set()
        self._records: list[dict] = []
        if self.records_path.exists():
            for line in self.records_path.read_text("utf-8").splitlines():
                if not line.strip():
                    continue
                record = json.loads(line)
                self._records.append(record)
                self._seen.add(record["trial_id"])

    def __contains__(self, trial_id: str) -> bool:
        return trial_id in self._seen

    def __len__(self) -> int:
        return len(self._records)

    @property
    def records(self) -> list[dict]:
        return list(self._records)

    def append(self, record: dict) -> None:
        trial_id = record["trial_id"]
        if trial_id in self._seen:
            raise ValueError(f"trial {trial_id!r} already recorded")
        with self.records_path.open("a", encoding="utf-8") as fh:
            fh.write(canonical_json(record) + "\n")
        self._records.append(record)
        self._seen.add(trial_id)

    def audit(self, entry: dict) -> None:
        with self.audit_path.open("a", encoding="utf-8") as fh:
            fh.write(canonical_json(entry) + "\n")

    def audit_entries(self) -> list[dict]:
        if not self.audit_path.exists():
            return []
        return [json.loads(line) for line in self.audit_path.read_text("utf-8").splitlines() if line.strip()]


def normalize_for_comparison(jsonl_text: str) -> str:
    """Blank the wall-clock fields so two runs can be compared byte for
    byte; everything else must already be deterministic."""
    lines = []
    for line in jsonl_text.splitlines():
        if not line.strip():
            continue
        record: dict[str, Any] = json.loads(line)
        if "timestamp" in record:
            record["timestamp"] = ""
        lines.append(canonical_json(record))
    return "\n".join(lines)


def load_records(path: str | Path) -> list[dict]:
    path = Path(path)
    if path.is_dir():
        path = path / RECORDS_FILE
    return [json.loads(line) for line in path.read_text("utf-8").splitlines() if line.strip()]


def records_equal_modulo_time(a: Iterable[str] | str, b: Iterable[str] | str) -> bool:
    text_a = a if isinstance(a, str) else "\n".join(a)
    text_b = b if isinstance(b, str) else "\n".join(b)
    return normalize_for_comparison(text_a) == normalize_for_comparison(text_b)
