from pathlib import Path

import pytest

GOLDEN = Path(__file__).parent / "golden"

# (criterion number, title, passed, detail), filled by test_acceptance.py
CRITERIA: list[tuple[int, str, bool, str]] = []


@pytest.fixture(scope="session")
def golden() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def lp():
    from regen433.entropy.lp import default_lp

    return default_lp()


@pytest.fixture(scope="session")
def absorption():
    from regen433.entropy.redundancy import absorption_check

    return absorption_check(4, 6)


@pytest.fixture
def criterion():
    def record(number: int, title: str, ok: bool, detail: str) -> bool:
        CRITERIA.append((number, title, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(CRITERIA):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail}")
