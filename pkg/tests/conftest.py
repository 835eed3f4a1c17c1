from __future__ import annotations

import json

import pytest

from spellforge.assets import golden

ELEMENTS = ["fire", "water", "wind", "earth"]


@pytest.fixture(scope="session")
def wind_scout_canonical() -> str:
    return golden("wind_scout.json")


@pytest.fixture(scope="session")
def gas_canonical() -> str:
    return golden("gas.json")


@pytest.fixture(scope="session")
def fizzle_canonical() -> str:
    return golden("fizzle.json")


@pytest.fixture(scope="session")
def mutations() -> list[dict]:
    return json.loads(golden("mutations.json"))


@pytest.fixture(scope="session")
def elements() -> list[str]:
    return list(ELEMENTS)
