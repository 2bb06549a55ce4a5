"""Shared test configuration.

Tests marked ``acceptance`` attach a ``criterion`` and a ``detail`` user
property; after the run a one-line PASS/FAIL summary per criterion is
printed, based on the real test outcome.
"""

_RESULTS = {}


def pytest_runtest_logreport(report):
    if "acceptance" not in report.keywords:
        return
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or report.failed:
        _RESULTS[report.nodeid] = (props["criterion"], report.passed, props.get("detail", ""))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in sorted(_RESULTS.values(), key=lambda r: r[0]):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status}  {criterion}: {detail}")
