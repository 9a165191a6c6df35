from hypothesis import settings

settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")

_CRITERIA: dict[str, tuple] = {}


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or report.outcome != "passed":
        _CRITERIA[report.nodeid] = (props["criterion"], report.outcome, props.get("seconds"))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome, secs in sorted(_CRITERIA.values(), key=lambda r: int(r[0].split(":")[0])):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        took = f" ({secs:.2f} s)" if secs is not None else ""
        terminalreporter.write_line(f"{verdict}  criterion {label}{took}")
