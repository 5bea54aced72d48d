ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    props = dict(report.user_properties)
    if "criterion" in props:
        status = "PASS" if report.passed else "FAIL"
        ACCEPTANCE.append((props["criterion"], status, props.get("detail", "")))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit, status, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {crit}: {status}  {detail}")
