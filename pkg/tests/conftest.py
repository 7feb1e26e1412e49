from pathlib import Path

import pytest

from ling2tuple import build_partition

DATA = Path(__file__).parent / "data"

BAC_PAIRS = [
    ("NoAlcohol", 0.0),
    ("YoungLegalLimit", 0.05),
    ("Intermediate", 0.065),
    ("LegalLimit", 0.08),
    ("RiskOfDeath", 0.3),
]


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def bac():
    return build_partition(BAC_PAIRS)


# acceptance criteria register their verdicts here; printed at session end
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        passed, title = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  AC{key:02d}  {title}")
