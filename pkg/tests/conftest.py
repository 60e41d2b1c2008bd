import os
import sys

sys.path.insert(0, os.path.dirname(__file__))  # make oracles importable

# one line per acceptance criterion, appended by test_acceptance.py and
# echoed after the test summary so a plain `pytest -v` run shows them
acceptance_lines = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)
