import numpy as np
import pytest

from monoext.linrel import from_kernel
from monoext.relfile import load_fixture, load_witness_fixture

SQ2 = np.sqrt(2.0)
SQ201 = np.sqrt(201.0)


@pytest.fixture
def fix_id():
    return load_fixture("fix_id")


@pytest.fixture
def e61():
    return load_fixture("e61")


@pytest.fixture
def e62():
    return load_fixture("e62")


@pytest.fixture
def e63():
    return load_fixture("e63")


@pytest.fixture
def neg_id():
    # x* = -x on R
    return from_kernel([[1.0]], [[1.0]])


@pytest.fixture
def back2():
    _, N, basis = load_witness_fixture("n_back2")
    return N, basis


@pytest.fixture
def second():
    _, N, basis = load_witness_fixture("n_second")
    return N, basis


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[num]
        terminalreporter.write_line(f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
