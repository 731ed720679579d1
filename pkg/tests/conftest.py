import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from supernil_lab import closure, commutator, corpus  # noqa: E402
from supernil_lab.algebra import Congruence, FiniteAlgebra, Operation  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def alg():
    """Corpus algebras by name."""
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = corpus.load(name)
        return cache[name]
    return get


@pytest.fixture(autouse=True)
def _fresh_caches():
    yield
    commutator.clear_cache()


def con(*r):
    return Congruence(tuple(r))


def one(n):
    return Congruence.one(n)


def zero(n):
    return Congruence.zero(n)


def meet_semilattice_with_absorbing():
    """{0,1} meet-semilattice extended by an absorbing element 2."""
    t = [0, 0, 2,
         0, 1, 2,
         2, 2, 2]
    return FiniteAlgebra("SL2+2", 3, (Operation("m", 2, tuple(t)),))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
