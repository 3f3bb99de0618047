"""Degree-preserving randomization of two-mode networks (curveball) and
null-normalized four-cycle statistics."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._util import as_rng, child_seeds
from .bipartite import TwoModeNetwork, count_four_cycles

__all__ = ["NullEnsembleStats", "curveball", "curveball_rows", "four_cycle_ratio", "default_iterations"]


def default_iterations(bip: TwoModeNetwork) -> int:
    return 5 * bip.agent_count


def curveball_rows(rows: list[set], iterations: int, rnd: random.Random) -> None:
    """Apply ``iterations`` curveball trades in place to per-agent group sets.

    Each trade picks two distinct agents, pools the groups that only one of
    them belongs to, and deals the pool back out at random so each agent
    keeps its degree.
    """
    n = len(rows)
    if n < 2:
        return
    randrange, sample = rnd.randrange, rnd.sample
    for _ in range(iterations):
        a = randrange(n)
        b = randrange(n - 1)
        if b >= a:
            b += 1
        ra, rb = rows[a], rows[b]
        only_a = ra - rb
        only_b = rb - ra
        if not only_a or not only_b:
            continue
        pool = sorted(only_a | only_b)
        new_a = set(sample(pool, len(only_a)))
        shared = ra & rb
        rows[a] = shared | new_a
        rows[b] = shared | (set(pool) - new_a)


def curveball(bip: TwoModeNetwork, iterations: Optional[int] = None, rng=None) -> TwoModeNetwork:
    """Random two-mode network with the same agent and group degree sequences.

    ``iterations`` defaults to five trades per agent.
    """
    if iterations is None:
        iterations = default_iterations(bip)
    rng = as_rng(rng)
    rnd = random.Random(int(rng.integers(2**63)))
    rows = [set(gs) for gs in bip.groups_of()]
    curveball_rows(rows, iterations, rnd)
    pairs = frozenset((a, g) for a, gs in enumerate(rows) for g in gs)
    return TwoModeNetwork(bip.agent_count, bip.group_count, pairs, bip.agent_labels, bip.group_labels)


@dataclass
class NullEnsembleStats:
    """An observed statistic against its values over a null ensemble.

    ``ratio`` is ``observed / mean(null_values)``; when the null mean is zero
    it is ``inf`` (or ``nan`` if the observation is zero too) and
    ``degenerate`` is set.
    """

    observed: float
    null_values: np.ndarray
    ratio: float
    quantiles: dict = field(default_factory=dict)
    degenerate: bool = False

    @classmethod
    def build(cls, observed, null_values, levels=(0.025, 0.5, 0.975)):
        null_values = np.asarray(null_values, dtype=float)
        mean = float(null_values.mean())
        if mean > 0:
            ratio, degenerate = observed / mean, False
        else:
            ratio, degenerate = (math.inf if observed > 0 else math.nan), True
        qs = {q: float(np.quantile(null_values, q)) for q in levels}
        return cls(float(observed), null_values, ratio, qs, degenerate)


def four_cycle_ratio(
    bip: TwoModeNetwork,
    replicates: int = 25,
    iterations: Optional[int] = None,
    rng=None,
) -> NullEnsembleStats:
    """Observed four-cycle count over the mean count in curveball randomizations.

    Each replicate starts from ``bip`` and uses its own child generator.
    """
    if replicates < 1:
        raise ValueError("replicates must be at least 1")
    if iterations is None:
        iterations = default_iterations(bip)
    rng = as_rng(rng)
    observed = count_four_cycles(bip)
    base = bip.groups_of()
    null = []
    for ss in child_seeds(rng, replicates):
        rnd = random.Random(int(np.random.default_rng(ss).integers(2**63)))
        rows = [set(gs) for gs in base]
        curveball_rows(rows, iterations, rnd)
        null.append(_four_cycles_from_rows(rows, bip.agent_count, bip.group_count))
    return NullEnsembleStats.build(observed, null)


def _incidence_from_rows(rows, agent_count, group_count) -> np.ndarray:
    m = np.zeros((agent_count, group_count), dtype=np.int64)
    for a, gs in enumerate(rows):
        if gs:
            m[a, list(gs)] = 1
    return m


def _four_cycles_from_rows(rows, agent_count, group_count) -> int:
    m = _incidence_from_rows(rows, agent_count, group_count)
    w = m @ m.T
    shared = w[np.triu_indices(agent_count, k=1)]
    return int((shared * (shared - 1) // 2).sum())
