import pytest

from maxduo.core import validate_related

WORKED_A = "abcabbc"
WORKED_B = "acbbcab"

# criterion number -> (passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}
CRITERIA = {
    1: "worked-example fixture",
    2: "oracle / cc-strict equivalence",
    3: "paper-mode gap fixture",
    4: "kernel answer preservation",
    5: "kernel size bounds",
    6: "matching upper bound and split lower bound",
    7: "randomized colour-coding error",
    8: "kernel confinement",
    9: "scaling smoke test",
}


@pytest.fixture
def worked():
    return validate_related(WORKED_A, WORKED_B)


@pytest.fixture
def acceptance():
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num, name in CRITERIA.items():
        if num not in ACCEPTANCE:
            tr.write_line(f"criterion {num} ({name}): NOT RUN")
            continue
        ok, detail = ACCEPTANCE[num]
        tr.write_line(f"criterion {num} ({name}): {'PASS' if ok else 'FAIL'}  {detail}")
