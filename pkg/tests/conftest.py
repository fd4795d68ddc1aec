import os

import pytest


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run the long census tier (n = 11)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow") or os.environ.get("BOOKKNOTS_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="long tier: use --runslow or BOOKKNOTS_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


_ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion():
    """Record a one-line PASS/FAIL verdict for an acceptance criterion."""

    def report(number, title, ok, detail=""):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        _ACCEPTANCE.append(line)
        print(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
