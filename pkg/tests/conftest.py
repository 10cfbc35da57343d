import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import FROZEN, random_diagram  # noqa: E402

from localaction.library import all_examples, concrete_examples  # noqa: E402

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def frozen() -> dict:
    return json.loads(FROZEN.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def examples():
    return all_examples()


@pytest.fixture(scope="session")
def concrete():
    return concrete_examples()


@pytest.fixture(scope="session")
def random_corpus():
    return [random_diagram(seed) for seed in range(200)]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
