# criterion number -> "PASS" / "FAIL" plus a note, filled by test_acceptance
CRITERIA = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        status, note = CRITERIA[n]
        terminalreporter.write_line(f"CRITERION {n:2d} {status}" + (f"  ({note})" if note else ""))
