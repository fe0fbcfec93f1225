import os

import pytest

from boundedratios.network import PlanarNetwork
from boundedratios.tropical import build_F


def pytest_collection_modifyitems(config, items):
    if os.environ.get("BOUNDEDRATIOS_STRETCH") == "1":
        return
    skip = pytest.mark.skip(reason="stretch tier; set BOUNDEDRATIOS_STRETCH=1")
    for item in items:
        if "stretch" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def F3():
    return build_F(3)


@pytest.fixture(scope="session")
def net3():
    return PlanarNetwork(3)


@pytest.fixture(scope="session")
def net4():
    return PlanarNetwork(4)


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    return request.config.stash.setdefault(_ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
