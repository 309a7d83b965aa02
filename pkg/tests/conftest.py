import re

_results: dict[int, tuple[str, str]] = {}
_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    title = m.group(2).replace("_", " ")
    if report.when == "call" or report.failed:
        previous, title = _results.get(n, ("PASS", title))
        status = "FAIL" if report.failed or previous == "FAIL" else "PASS"
        if report.skipped and status != "FAIL":
            status = "SKIP"
        _results[n] = (status, title)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        status, title = _results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {title}")
