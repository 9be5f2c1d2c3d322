import pytest

from dynlab.model import GaussianParams

FIG1 = GaussianParams(alpha=0.1, beta=0.6, gamma=0.4, sigma=1.1, tau=0.2)
FIG3 = GaussianParams(alpha=0.1, beta=0.95, gamma=1.4, sigma=1.1, tau=0.5)


@pytest.fixture
def fig1():
    return FIG1


@pytest.fixture
def fig3():
    return FIG3


_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    num = getattr(item.function, "criterion", None)
    if num is None:
        return
    title = (item.function.__doc__ or item.name).strip().splitlines()[0]
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _criteria[num] = (title, rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        title, ok = _criteria[num]
        terminalreporter.write_line(f"criterion {num:2d}  {'PASS' if ok else 'FAIL'}  {title}")
