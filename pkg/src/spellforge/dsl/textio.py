"""Payload extraction from raw model output and canonical JSON writing."""

from __future__ import annotations

import json
import math
import re
from typing import Any

_FENCE_RE = re.compile(r"^\s*```[a-zA-Z0-9_-]*\s*$", re.MULTILINE)


def strip_code_fences(text: str) -> str:
    """Remove markdown fence marker lines, keeping their contents."""
    return _FENCE_RE.sub("", text)


def _balanced_object(text: str, start: int) -> int | None:
    """Index one past the brace closing the object at ``start``, or None.

    String-aware: braces inside JSON string literals do not count.
    """
    depth = 0
    in_string = False
    escaped = False
    for i in range(start, len(text)):
        ch = text[i]
        if in_string:
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == '"':
                in_string = False
            continue
        if ch == '"':
            in_string = True
        elif ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth == 0:
                return i + 1
    return None


def extract_payload(raw_text: str) -> str:
    """First maximal balanced-brace substring after fence stripping.

    Returns an empty string when no balanced object exists anywhere.
    """
    text = strip_code_fences(raw_text)
    pos = text.find("{")
    while pos != -1:
        end = _balanced_object(text, pos)
        if end is not None:
            return text[pos:end]
        pos = text.find("{", pos + 1)
    return ""


def extract_last_payload(raw_text: str) -> str:
    """Last maximal balanced-brace substring; used by mocks that echo
    JSON embedded at the end of a prompt."""
    text = strip_code_fences(raw_text)
    last = ""
    pos = text.find("{")
    while pos != -1:
        end = _balanced_object(text, pos)
        if end is not None:
            last = text[pos:end]
            pos = text.find("{", end)
        else:
            pos = text.find("{", pos + 1)
    return last


def _write(value: Any, out: list[str]) -> None:
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, str):
        out.append(json.dumps(value, ensure_ascii=False))
    elif isinstance(value, int):
        out.append(repr(value))
    elif isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite number not serializable: {value!r}")
        # Shortest decimal form; whole floats render without the trailing .0
        out.append(repr(int(value)) if value.is_integer() else repr(value))
    elif isinstance(value, dict):
        out.append("{")
        first = True
        for key in sorted(value):
            if not isinstance(key, str):
                raise ValueError("object keys must be strings")
            if not first:
                out.append(",")
            first = False
            out.append(json.dumps(key, ensure_ascii=False))
            out.append(":")
            _write(value[key], out)
        out.append("}")
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, item in enumerate(value):
            if i:
                out.append(",")
            _write(item, out)
        out.append("]")
    else:
        raise ValueError(f"not JSON-serializable: {type(value)!r}")


def canonical_json(value: Any) -> str:
    """Deterministic serialization: sorted keys, no whitespace, shortest
    round-trip numbers, UTF-8 friendly. Byte-identical for equal values."""
    out: list[str] = []
    _write(value, out)
    return "".join(out)


def is_canonical(document: str) -> bool:
    try:
        return canonical_json(json.loads(document)) == document
    except (ValueError, TypeError):
        return False
