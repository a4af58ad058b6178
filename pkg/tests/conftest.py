"""Collects acceptance-criterion outcomes and prints one verdict line per criterion."""
import pytest

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    entry = _CRITERIA.setdefault(number, {"title": title, "passed": True, "tests": []})
    if rep.when == "call" or rep.failed:
        if rep.failed:
            entry["passed"] = False
        entry["tests"].append((item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        e = _CRITERIA[number]
        verdict = "PASS" if e["passed"] else "FAIL"
        failed = [name for name, out in e["tests"] if out == "failed"]
        suffix = f"  (failed: {', '.join(failed)})" if failed else ""
        tr.write_line(f"{verdict}  criterion {number}: {e['title']}{suffix}")
