import itertools
from pathlib import Path

import pytest

from lrckit.algebra import Matrix

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def example_H() -> Matrix:
    return Matrix.from_text((FIXTURES / "example_H.txt").read_text())


def naive_min_distance(G: Matrix) -> int:
    """Plain itertools sweep over every message; shares no code with the oracles."""
    q = G.field.modulus
    k, n = G.shape
    best = n + 1
    for msg in itertools.product(range(q), repeat=k):
        if not any(msg):
            continue
        w = sum(1 for col in zip(*G.rows) if sum(m * c for m, c in zip(msg, col)) % q)
        best = min(best, w)
    return best


# -- acceptance summary ------------------------------------------------------

_CRITERIA: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        detail = next((body for title, body in report.sections if title.endswith("stdout call")), "").strip()
        _CRITERIA[name] = ("PASS" if report.passed else "FAIL", detail.splitlines()[-1] if detail else "")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda s: int(s.split("_")[2])):
        verdict, detail = _CRITERIA[name]
        terminalreporter.write_line(f"{verdict} {name}: {detail}")
