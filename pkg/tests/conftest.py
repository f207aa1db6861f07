import pytest

from dwlink.catalog import load_catalog
from dwlink.store import ResultStore


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def store(tmp_path_factory):
    return ResultStore(tmp_path_factory.mktemp("results"))


def pytest_configure(config):
    config.acceptance = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "acceptance", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        status, elapsed, limit, note = results[n]
        terminalreporter.write_line(f"criterion {n}: {status}  ({elapsed:.1f}s, limit {limit:.0f}s)  {note}")
