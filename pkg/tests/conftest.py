import pytest

from artinkms import ArtinMonoid, load_fixture

_criteria: dict[str, tuple[str, str]] = {}


@pytest.fixture
def monoid():
    """Factory for fresh monoids (no shared caches between tests)."""

    def make(name: str) -> ArtinMonoid:
        return ArtinMonoid(load_fixture(name))

    return make


@pytest.fixture(scope="session")
def shared():
    """Session-wide monoids for expensive read-only checks."""
    cache = {}

    def get(name: str) -> ArtinMonoid:
        if name not in cache:
            cache[name] = ArtinMonoid(load_fixture(name))
        return cache[name]

    return get


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    key = props["criterion"]
    if report.when == "call" or (report.when == "setup" and report.failed):
        _criteria[key] = ("PASS" if report.passed else "FAIL", props.get("detail", ""))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria, key=lambda k: int(k.split(":")[0])):
        status, detail = _criteria[key]
        line = f"{status} criterion {key}"
        if detail:
            line += f" [{detail}]"
        terminalreporter.write_line(line)
