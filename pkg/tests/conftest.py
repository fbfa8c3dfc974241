import pytest

from ahiso import make_ads_schwarzschild, make_hyperbolic, make_perturbed

_ACCEPT: dict[str, str] = {}


@pytest.fixture(scope="session")
def hyperbolic():
    return make_hyperbolic()


@pytest.fixture(scope="session")
def ads_half():
    return make_ads_schwarzschild(0.5)


@pytest.fixture(scope="session")
def ads_one():
    return make_ads_schwarzschild(1.0)


@pytest.fixture(scope="session")
def ads_two():
    return make_ads_schwarzschild(2.0)


@pytest.fixture(scope="session")
def perturbed_valid():
    return make_perturbed(1.0, (0.1, 0.05))


def pytest_runtest_logreport(report):
    # Collect acceptance outcomes for the one-line-per-criterion recap.
    if "test_acceptance" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.skipped):
        _ACCEPT[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPT:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for nodeid in sorted(_ACCEPT):
        name = nodeid.rsplit("::", 1)[-1]
        terminalreporter.write_line(f"{name}: {_ACCEPT[nodeid].upper()}")
