import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", deadline=None, max_examples=50)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def naive_digits(n, b):
    """Reference digit expansion, least significant digit peeled first."""
    out = []
    while n > 0:
        out.append(n % b)
        n //= b
    return out[::-1]


def naive_elated(n, b, e=2):
    ds = naive_digits(n, b)
    return ds[0] * sum(d**e for d in ds)


def naive_happy(n, b, e=2):
    return sum(d**e for d in naive_digits(n, b))


# acceptance criteria: one summary line each, failing if any of its tests fail

_CRITERIA: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        number, title = marker.args
        entry = _CRITERIA.setdefault(number, [title, True, 0.0])
        entry[1] = entry[1] and rep.passed
        entry[2] += rep.duration


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok, secs = _CRITERIA[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number:2d}: {title} ({secs:.1f}s)")
