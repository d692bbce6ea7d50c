import functools
import sys

import pytest

from clustertilt.fixtures import fixture_names, load_fixture
from clustertilt.linalg import Field

QQ = Field()
ALL_FIXTURES = fixture_names()


@functools.lru_cache(maxsize=None)
def cached(name: str, p: int | None = None):
    return load_fixture(name, Field(p) if p else QQ)


@pytest.fixture(scope="session")
def fixture():
    """Loader returning (bound quiver, algebra), cached for the session."""
    return cached


@functools.lru_cache(maxsize=None)
def projective_fragment(name: str, radius: int = 2, max_dim: int = 12):
    """AR fragment around all indecomposable projectives, cached per fixture."""
    from clustertilt.arknit import ARFragment, knit_around
    _, A = cached(name)
    frag = ARFragment(A)
    frag.register_census()
    return knit_around(A, sorted(frag.projectives.values()), radius, frag, max_dim=max_dim)


def pytest_terminal_summary(terminalreporter):
    acc = sys.modules.get("test_acceptance")
    if acc is None or not acc.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in acc.summary_lines():
        terminalreporter.write_line(line)
