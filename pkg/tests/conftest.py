import re

_CRITERIA: dict[str, list[str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    m = re.search(r"test_criterion_(\d+)_(\w+?)(\[.*\])?$", report.nodeid)
    if not m:
        return
    key = f"{m.group(1)} {m.group(2)}"
    outcomes = _CRITERIA.setdefault(key, [])
    if report.when == "call" or report.failed:
        outcomes.append("PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA, key=lambda k: int(k.split()[0])):
        num, name = key.split(" ", 1)
        status = "PASS" if all(o == "PASS" for o in _CRITERIA[key]) and _CRITERIA[key] else "FAIL"
        terminalreporter.write_line(f"CRITERION {num} {status}  {name.replace('_', ' ')}")
