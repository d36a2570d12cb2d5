import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# filled by tests/test_acceptance.py: criterion number -> (passed, detail)
ACCEPTANCE_REPORT = {}


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(20240601)


@pytest.fixture
def report():
    return ACCEPTANCE_REPORT


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_REPORT):
        passed, detail = ACCEPTANCE_REPORT[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if passed else 'FAIL'}  {detail}")
