import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from treecohom import builtin_diagram  # noqa: E402

ACCEPTANCE_LINES = []


def figure1_sub():
    sub, _ = builtin_diagram("figure1").relabel([1, 2, 3, 4])
    return sub


def test_diagrams():
    """Named diagrams used across the suite (the list the Euler check has to pass on)."""
    out = {}
    for n in range(1, 5):
        out[f"path:{n}"] = builtin_diagram("path", n)
    for d in range(1, 5):
        out[f"multi:{d}"] = builtin_diagram("multi_edge", d)
    for k in (2, 3):
        out[f"instar:{k}"] = builtin_diagram("in_star", k)
        out[f"outstar:{k}"] = builtin_diagram("out_star", k)
    for n in (1, 2):
        for m in (1, 2):
            out[f"a:{n},{m}"] = builtin_diagram("a", n, m)
    out["figure1[1..4]"] = figure1_sub()
    return out


test_diagrams.__test__ = False


@pytest.fixture(scope="session")
def diagrams():
    return test_diagrams()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
