import pytest

_criteria: dict[str, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.fixture
def measured(request):
    """Dict for values a criterion wants printed in the acceptance summary."""
    marker = request.node.get_closest_marker("criterion")
    entry = _criteria.setdefault(request.node.nodeid, {"marker": marker, "values": {}})
    return entry["values"]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call":
        return
    entry = _criteria.setdefault(item.nodeid, {"marker": marker, "values": {}})
    entry["passed"] = rep.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    entries = sorted(_criteria.values(), key=lambda e: e["marker"].args[0])
    for e in entries:
        number, title = e["marker"].args
        status = "PASS" if e.get("passed") else "FAIL"
        extra = ", ".join(f"{k}={v}" for k, v in e["values"].items())
        line = f"[{status}] {number:>2}. {title}"
        terminalreporter.write_line(line + (f"  ({extra})" if extra else ""))
