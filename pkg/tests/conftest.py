import pytest

from pathhom.config import settings
from pathhom.corpus import random_corpus
from pathhom.digraph_core import parse_digraph
from pathhom.fixtures import builtin_fixture, fixture_names


@pytest.fixture(autouse=True)
def check_invariants(monkeypatch):
    monkeypatch.setattr(settings, "CHECK_INVARIANTS", True)


@pytest.fixture
def square():
    return parse_digraph("0 1\n0 2\n1 3\n2 3\n")


@pytest.fixture
def triangle():
    return parse_digraph("a b\nb c\na c\n")


@pytest.fixture
def multisquare():
    return parse_digraph("x a\nx b\nx c\na y\nb y\nc y\n")


@pytest.fixture
def g_main():
    return builtin_fixture("g_main")


@pytest.fixture
def g_prime():
    return builtin_fixture("g_prime")


@pytest.fixture(params=fixture_names())
def fixture_digraph(request):
    return builtin_fixture(request.param)


@pytest.fixture(scope="session")
def small_corpus():
    return random_corpus(size=25, seed=7, max_vertices=7)
