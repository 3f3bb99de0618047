import itertools

import numpy as np
import pytest

from bigraph.bipartite import TwoModeNetwork
from bigraph.graph import OneModeNetwork


class ScriptedRNG:
    """Replays a fixed list of draws: ``("integers", index)``, ``("random", u)``
    or ``("beta", x)``. Raises if the code under test asks for anything else."""

    def __init__(self, script):
        self.script = list(script)
        self.pos = 0

    def _next(self, kind):
        if self.pos >= len(self.script):
            raise AssertionError(f"script exhausted, wanted {kind}")
        got, value = self.script[self.pos]
        if got != kind:
            raise AssertionError(f"draw {self.pos}: script has {got}, code asked for {kind}")
        self.pos += 1
        return value

    def integers(self, high, *args, **kwargs):
        value = self._next("integers")
        assert 0 <= value < high, f"scripted index {value} outside [0, {high})"
        return value

    def random(self):
        return self._next("random")

    def beta(self, a, b):
        return self._next("beta")

    @property
    def exhausted(self):
        return self.pos == len(self.script)


@pytest.fixture
def scripted():
    return ScriptedRNG


def gnp(n, p, seed):
    rng = np.random.default_rng(seed)
    edges = [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p]
    return OneModeNetwork(n, frozenset(edges))


def random_incidence(rows, cols, fill, seed):
    rng = np.random.default_rng(seed)
    return TwoModeNetwork.from_incidence((rng.random((rows, cols)) < fill).astype(int))


ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
