from __future__ import annotations

from pathlib import Path

import pytest

from puftank.puf.device import synthesize_device
from puftank.puf.lut import lut_from_json
from puftank.verifier import table_from_json

import support

REPO_ROOT = Path(__file__).resolve().parent.parent
SCENARIO_DIR = REPO_ROOT / "scenarios"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"

# Population member 0 of the default provisioning population.
FIXTURE_DEVICE_SEED = 0xCA8216FA9058D0FA


def scenario_path(name: str) -> Path:
    return SCENARIO_DIR / f"{name}.json"


@pytest.fixture(scope="session")
def pinned_lut():
    return lut_from_json((SCENARIO_DIR / "lut_default.json").read_text())


@pytest.fixture(scope="session")
def pinned_table():
    return table_from_json((SCENARIO_DIR / "enrollment_table.json").read_text())


@pytest.fixture(scope="session")
def fixture_device():
    return synthesize_device(FIXTURE_DEVICE_SEED)


def pytest_terminal_summary(terminalreporter, exitstatus, config) -> None:
    if support.ACCEPTANCE_VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in support.ACCEPTANCE_VERDICTS:
            terminalreporter.write_line(line)
