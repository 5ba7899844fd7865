import random
import sys

import pytest
from hypothesis import settings

from perfectmat import bitset as bs
from perfectmat.families import example_corpus

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

_CORPUS = {e.name: e for e in example_corpus()}


@pytest.fixture(scope="session")
def corpus():
    return _CORPUS


@pytest.fixture(params=sorted(_CORPUS))
def entry(request):
    return _CORPUS[request.param]


@pytest.fixture
def rng():
    return random.Random(20261014)


def S(*elements):
    """Shorthand mask for tests."""
    return bs.mask(elements)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.REPORT):
        status, detail = mod.REPORT[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {detail}")
