from dataclasses import dataclass

import pytest


@dataclass
class CriterionRecord:
    number: int
    title: str
    detail: str = ""
    passed: bool = False


# filled in by test_acceptance.py, printed at the end of the run
ACCEPTANCE: dict[int, CriterionRecord] = {}


@pytest.fixture
def criterion(request):
    """criterion(n, title) registers an acceptance criterion; its pass/fail
    status is taken from the test outcome. Set ``.detail`` for the summary."""
    made = []

    def start(number: int, title: str) -> CriterionRecord:
        rec = ACCEPTANCE[number] = CriterionRecord(number, title)
        made.append(rec)
        return rec

    yield start
    rep = getattr(request.node, "rep_call", None)
    for rec in made:
        rec.passed = rep is not None and rep.passed


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        rec = ACCEPTANCE[number]
        line = f"criterion {number}: {'PASS' if rec.passed else 'FAIL'}  {rec.title}"
        if rec.detail:
            line += f"  [{rec.detail}]"
        terminalreporter.write_line(line)
