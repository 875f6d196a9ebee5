import pytest

from cremona7.family import FamilyParams, build_gst, compose

_CRITERIA: dict = {}


@pytest.fixture(scope="session")
def g11():
    return build_gst(FamilyParams(1, 1))


@pytest.fixture(scope="session")
def inverse_composition():
    """compose(g(-1,-1), g(1,1)), the degree-49 workload."""
    return compose(build_gst(FamilyParams(-1, -1)), build_gst(FamilyParams(1, 1)))


@pytest.fixture(scope="session")
def group_composition():
    """compose(g(1,0), g(0,1))."""
    return compose(build_gst(FamilyParams(1, 0)), build_gst(FamilyParams(0, 1)))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or (report.when != "call" and report.passed):
        return
    number, title = marker.args
    ok = report.passed and _CRITERIA.get(number, (True,))[0]
    _CRITERIA[number] = (ok, title)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        ok, title = _CRITERIA[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title}")
