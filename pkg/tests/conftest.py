import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_acceptance_records = []


def record_criterion(number: int, passed: bool, detail: str = ""):
    _acceptance_records.append((number, passed, detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_records:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for number, passed, detail in sorted(set(_acceptance_records)):
        status = "PASS" if passed else "FAIL"
        line = f"criterion {number:2d}: {status}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
