from __future__ import annotations

import pytest

_RESULTS: dict[int, tuple[str, str]] = {}
_NOTES: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    failed = report.failed
    if report.when == "call" or failed:
        if failed or number not in _RESULTS:
            _RESULTS[number] = ("FAIL" if failed else "PASS", title)


@pytest.fixture
def note(request):
    """Attach a line of evidence to the running acceptance criterion."""
    marker = request.node.get_closest_marker("criterion")
    number = marker.args[0] if marker else 0

    def add(text: str) -> None:
        _NOTES.setdefault(number, []).append(text)

    return add


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        status, title = _RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d} {status}: {title}")
        for line in _NOTES.get(number, []):
            terminalreporter.write_line(f"    {line}")
