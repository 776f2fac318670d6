import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): an acceptance criterion")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    # a criterion passes only if its call phase passed; a failing fixture counts too
    if rep.when == "call" or rep.failed:
        item.config._criteria[mark.args] = rep.passed


def pytest_terminal_summary(terminalreporter, config):
    results = config._criteria
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), ok in sorted(results.items()):
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}")
