"""Access to data files shipped inside the package."""

from __future__ import annotations

import json
from importlib import resources
from typing import Any


def data_text(relpath: str) -> str:
    return resources.files("spellforge").joinpath(f"data/{relpath}").read_text("utf-8")


def data_json(relpath: str) -> Any:
    return json.loads(data_text(relpath))


def golden(name: str) -> str:
    return data_text(f"golden/{name}")
