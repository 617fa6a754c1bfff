import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[name] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in sorted(_ACCEPTANCE.items(), key=lambda kv: _order(kv[0])):
        terminalreporter.write_line(f"{verdict}  {name}")


def _order(name: str) -> int:
    digits = "".join(ch for ch in name.split("_")[2] if ch.isdigit()) if name.count("_") >= 2 else ""
    return int(digits) if digits else 99
