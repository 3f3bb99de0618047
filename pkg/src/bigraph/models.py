"""Group-formation models (teams, clubs, organizations) and the generator that
applies one of them repeatedly to build a two-mode network.

Every stochastic choice goes through a numpy ``Generator`` (or anything with
``random``, ``integers`` and ``beta`` methods): ``integers(n)`` picks an index
into a sorted candidate list, ``random()`` decides a Bernoulli trial.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional

from ._util import as_rng, child_seeds
from .bipartite import TwoModeNetwork
from .blau import BlauSpace, NicheSpec, blau_space, niche_partition, sample_niche
from .graph import OneModeNetwork, sample_maximal_clique

__all__ = [
    "MODELS",
    "OUTSIDE_MODES",
    "ModelConfig",
    "teams_group",
    "clubs_group",
    "organizations_group",
    "generate_two_mode",
]

MODELS = ("teams", "clubs", "organizations")
OUTSIDE_MODES = ("one-minus-p", "p")


def _pop_random(pool: list, rng):
    return pool.pop(int(rng.integers(len(pool))))


def teams_group(
    net: OneModeNetwork,
    p: float,
    rng=None,
    *,
    clique: Optional[Iterable[int]] = None,
    clique_method: str = "greedy",
    diagnostics: Optional[Counter] = None,
) -> frozenset:
    """Form one team from a random maximal clique.

    The team has as many positions as the clique has members. The first goes
    to a random incumbent; each later one goes to a remaining incumbent with
    probability ``p`` and otherwise to a random newcomer (non-clique agent).

    If a newcomer is called for but none exist, an incumbent is taken instead
    and ``diagnostics["newcomer_fallback"]`` is incremented.

    Parameters
    ----------
    clique : iterable of int, optional
        Seed clique to use instead of sampling one.
    """
    rng = as_rng(rng)
    seed = frozenset(clique) if clique is not None else sample_maximal_clique(net, rng, clique_method)
    incumbents = sorted(seed)
    newcomers = sorted(set(range(net.node_count)) - seed)
    size = len(incumbents)
    team = [_pop_random(incumbents, rng)]
    for _ in range(1, size):
        if rng.random() < p:
            team.append(_pop_random(incumbents, rng))
        elif newcomers:
            team.append(_pop_random(newcomers, rng))
        else:
            if diagnostics is not None:
                diagnostics["newcomer_fallback"] += 1
            team.append(_pop_random(incumbents, rng))
    return frozenset(team)


def clubs_group(
    net: OneModeNetwork,
    p: float,
    rng=None,
    *,
    clique: Optional[Iterable[int]] = None,
    clique_method: str = "greedy",
    trace: Optional[list] = None,
) -> frozenset:
    """Grow a club from a random maximal clique.

    Friends of current members are approached one at a time in random order.
    A candidate joins if the club's density including them stays at least
    ``p``; otherwise they decline for good. Growth stops when no friend of
    the club is left to approach.

    ``trace``, when given, receives ``(candidate, density, joined)`` tuples.
    """
    rng = as_rng(rng)
    nbrs = net.neighbors
    club = set(clique) if clique is not None else set(sample_maximal_clique(net, rng, clique_method))
    ties = sum(len(nbrs[u] & club) for u in club) // 2
    declined: set = set()
    candidates = set().union(*(nbrs[u] for u in club)) - club
    while candidates:
        pool = sorted(candidates)
        recruit = pool[int(rng.integers(len(pool)))]
        k = len(club) + 1
        new_ties = ties + len(nbrs[recruit] & club)
        density = new_ties / (k * (k - 1) / 2)
        joined = density >= p
        if trace is not None:
            trace.append((recruit, density, joined))
        if joined:
            club.add(recruit)
            ties = new_ties
            candidates |= nbrs[recruit]
            candidates -= club
        else:
            declined.add(recruit)
        candidates -= declined
    return frozenset(club)


def organizations_group(
    net: OneModeNetwork,
    blau: Optional[BlauSpace],
    p: float,
    rng=None,
    outside_prob_mode: str = "one-minus-p",
    *,
    niche: Optional[NicheSpec] = None,
    radius_shape=(1.0, 10.0),
    diagnostics: Optional[Counter] = None,
) -> frozenset:
    """Recruit an organization from a niche in Blau space.

    Agents inside the niche join independently with probability ``p``.
    While the organization is smaller than its niche, the nearest untried
    outside agent is approached once and joins with probability ``1 - p``
    (``outside_prob_mode="one-minus-p"``) or ``p`` (``"p"``).

    Under-filled organizations are returned as they are; the shortfall is
    counted in ``diagnostics["underfilled"]``.
    """
    if outside_prob_mode not in OUTSIDE_MODES:
        raise ValueError(f"outside_prob_mode must be one of {OUTSIDE_MODES}")
    rng = as_rng(rng)
    if blau is None:
        blau = blau_space(net)
    if blau.size != net.node_count:
        raise ValueError("Blau space size does not match the network")
    if niche is None:
        niche = sample_niche(blau, rng, radius_shape)
    inside, outside = niche_partition(blau, niche)
    q_out = 1.0 - p if outside_prob_mode == "one-minus-p" else p

    org = [i for i in inside if rng.random() < p]
    pending = list(outside)
    while len(org) < len(inside) and pending:
        i = pending.pop(0)
        if rng.random() < q_out:
            org.append(i)
    if diagnostics is not None and len(org) < len(inside):
        diagnostics["underfilled"] += 1
    return frozenset(org)


@dataclass(frozen=True)
class ModelConfig:
    model: str
    p: float
    group_count: int
    seed: Optional[int] = None
    d: int = 2
    outside_prob_mode: str = "one-minus-p"
    clique_method: str = "greedy"
    radius_shape: tuple = (1.0, 10.0)

    def validate(self, node_count: Optional[int] = None) -> None:
        if self.model not in MODELS:
            raise ValueError(f"model must be one of {MODELS}, got {self.model!r}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if self.group_count < 0:
            raise ValueError("group_count must be nonnegative")
        if self.outside_prob_mode not in OUTSIDE_MODES:
            raise ValueError(f"outside_prob_mode must be one of {OUTSIDE_MODES}")
        if self.clique_method not in ("greedy", "uniform"):
            raise ValueError("clique_method must be 'greedy' or 'uniform'")
        if self.d < 1:
            raise ValueError("d must be at least 1")
        if node_count is not None and self.model == "organizations" and node_count > 1 and self.d > node_count - 1:
            raise ValueError(f"d must be at most node_count - 1 = {node_count - 1}")


def generate_two_mode(
    net: OneModeNetwork,
    cfg: ModelConfig,
    *,
    blau: Optional[BlauSpace] = None,
    diagnostics: Optional[Counter] = None,
) -> TwoModeNetwork:
    """Draw ``cfg.group_count`` independent groups from ``net``.

    Group ``g`` uses its own child generator spawned from ``cfg.seed``, so a
    group's membership does not depend on how many groups precede it. For
    the organizations model the Blau space is computed once and shared.
    """
    cfg.validate(net.node_count)
    if cfg.model == "organizations" and blau is None:
        blau = blau_space(net, cfg.d)
    groups = []
    for ss in child_seeds(cfg.seed, cfg.group_count):
        rng = as_rng(ss)
        if cfg.model == "teams":
            g = teams_group(net, cfg.p, rng, clique_method=cfg.clique_method, diagnostics=diagnostics)
        elif cfg.model == "clubs":
            g = clubs_group(net, cfg.p, rng, clique_method=cfg.clique_method)
        else:
            g = organizations_group(net, blau, cfg.p, rng, cfg.outside_prob_mode,
                                    radius_shape=cfg.radius_shape, diagnostics=diagnostics)
        groups.append(g)
    return TwoModeNetwork.from_groups(net.node_count, groups, agent_labels=net.labels)
