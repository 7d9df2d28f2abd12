import pytest

from cess.core import SchemeParams
from cess.rs import CeRs


class KeylessRs(CeRs):
    """ce-rs with its keys zeroed: shares expose the message."""

    def encode_with_keys(self, message, keys):
        return super().encode_with_keys(message, [0] * len(keys))


@pytest.fixture
def keyless_rs():
    return KeylessRs(SchemeParams(3, 1, 1, 7))


# Acceptance criteria report: tests marked ``criterion(number, title)`` get one
# PASS/FAIL line in the terminal summary.
_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    number, title = mark.args
    if rep.failed or (rep.when == "call" and rep.passed):
        previous = _CRITERIA.get(number, (title, "PASS"))[1]
        verdict = "FAIL" if rep.failed or previous == "FAIL" else "PASS"
        _CRITERIA[number] = (title, verdict)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, verdict = _CRITERIA[number]
        terminalreporter.write_line(f"{verdict} criterion {number}: {title}")
