import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from isct import SequenceDatabase

TOY_ROWS = ["abddc", "adbbded", "acdeeaa", "acaeadcd", "abbcaac", "acbbccaa"]
TOY_GROUPS = [0, 0, 1, 1, 2, 2]


@pytest.fixture
def toy_db():
    return SequenceDatabase.from_tokens([list(s) for s in TOY_ROWS])


@pytest.fixture
def enc(toy_db):
    """Encode a string of single-letter items with the toy alphabet."""
    return lambda text: toy_db.alphabet.encode(list(text))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
