import random

import pytest

from transeq.words import Alphabet, parse

F2 = Alphabet(2)
F3 = Alphabet(3)

_acceptance = []


def w2(text):
    return parse(text, F2)


def w3(text):
    return parse(text, F3)


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, duration in _acceptance:
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  {name}  ({duration:.2f}s)")
