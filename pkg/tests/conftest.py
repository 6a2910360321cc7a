import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bautq.corpus import CORPUS  # noqa: E402
from bautq.dsl import parse  # noqa: E402

ACCEPTANCE_RESULTS: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture(scope="session")
def ws():
    return parse(CORPUS)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        title, ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {k}. {title}" + (f" -- {detail}" if detail else ""))
