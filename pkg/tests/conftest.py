import re

# criterion number -> (title, [outcome per test])
_acceptance: dict[int, tuple[str, list[bool]]] = {}
_NAME = re.compile(r"test_c(\d+)_([a-z0-9_]+)")


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when != "call" and report.outcome == "passed":
        return
    m = _NAME.search(report.nodeid.split("::")[-1])
    if not m:
        return
    title, outcomes = _acceptance.setdefault(int(m.group(1)), (m.group(2).replace("_", " "), []))
    outcomes.append(report.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_acceptance):
        title, outcomes = _acceptance[num]
        verdict = "PASS" if all(outcomes) else "FAIL"
        terminalreporter.write_line(
            f"{verdict}  criterion {num:2d}: {title} ({sum(outcomes)}/{len(outcomes)} tests)"
        )
