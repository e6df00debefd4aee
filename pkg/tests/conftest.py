from pathlib import Path

import pytest

from stratachow.chowfile import load_file

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def line_doc():
    return load_file(DATA / "line.chow")


# criterion number -> (title, "PASS" | "FAIL"), filled in by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, verdict = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2} {title}: {verdict}")
