import json
import sys
import pathlib

import pytest

from ellshift.curve import Curve
from ellshift.exactfield import NumberField
from ellshift.heights import HeightContext
from ellshift.serialization import parse_input
from ellshift import solver

CORPUS = pathlib.Path(__file__).parent / "corpus"
CORPUS_NAMES = sorted(p.stem for p in CORPUS.glob("*.json"))


def load(name):
    return parse_input(json.loads((CORPUS / ("%s.json" % name)).read_text()))


@pytest.fixture(scope="session")
def QQ():
    return NumberField([0, 1])


@pytest.fixture(scope="session")
def E(QQ):
    """v^2 = u^3 + 15 over Q."""
    return Curve(QQ, 0, 15)


@pytest.fixture(scope="session")
def delta(E):
    return E.point(1, 4)


@pytest.fixture(scope="session")
def K15():
    return NumberField([-15, 0, 1])


@pytest.fixture(scope="session")
def E15(K15):
    return Curve(K15, 0, 15)


@pytest.fixture(scope="session")
def ctx():
    return HeightContext()


class _Solved:
    """Memoized solver runs shared across test modules."""

    def __init__(self):
        self._cache = {}

    def eq(self, name):
        key = ("eq", name)
        if key not in self._cache:
            self._cache[key] = load(name)
        return self._cache[key]

    def __call__(self, name, kind):
        key = (name, kind)
        if key not in self._cache:
            _, _, eq = self.eq(name)
            if kind == "hyper":
                self._cache[key] = solver.hyperexponential_search(eq)
            else:
                self._cache[key] = solver.solve(eq, kind)
        return self._cache[key]


@pytest.fixture(scope="session")
def solved():
    return _Solved()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.DESCRIPTIONS):
        status = mod.RESULTS.get(n, "NOT RUN")
        terminalreporter.write_line("criterion %d: %s  %s" % (n, status, mod.DESCRIPTIONS[n]))
