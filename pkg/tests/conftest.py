import pytest

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    report = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None and (report.when == "call" or report.failed):
        number, title = mark.args
        entry = _CRITERIA.setdefault(number, {"title": title, "passed": 0, "failed": 0})
        entry["passed" if report.passed else "failed"] += 1
    return report


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        e = _CRITERIA[number]
        status = "PASS" if e["failed"] == 0 and e["passed"] else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {e['title']} "
                                    f"({e['passed']} passed, {e['failed']} failed)")
