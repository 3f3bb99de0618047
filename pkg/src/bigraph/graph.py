"""One-mode (agent-agent) social networks and the graph primitives the group
models are built on: edge-list I/O, induced density, breadth-first geodesics,
random maximal cliques, Watts-Strogatz small worlds and Zachary's karate club.
"""

from __future__ import annotations

import io
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from typing import Iterable, Sequence

import numpy as np

from ._util import as_rng, atomic_write_text

__all__ = [
    "OneModeNetwork",
    "DisconnectedGraphError",
    "load_edge_list",
    "read_edge_list",
    "write_edge_list",
    "format_edge_list",
    "induced_density",
    "geodesic_distances",
    "maximal_cliques",
    "sample_maximal_clique",
    "watts_strogatz",
    "connected_watts_strogatz",
    "karate_club",
]


class DisconnectedGraphError(ValueError):
    """Raised by strict geodesic computation when some pair is unreachable."""


@dataclass(frozen=True, eq=False)
class OneModeNetwork:
    """Undirected, unweighted simple graph on agents ``0..node_count-1``.

    Parameters
    ----------
    node_count : int
        Number of agents. Ids are dense.
    edges : iterable of (int, int)
        Unordered agent pairs. Stored canonically as ``(i, j)`` with ``i < j``.
    labels : sequence of str, optional
        Display label per agent; defaults to the agent id as a string.
    """

    node_count: int
    edges: frozenset = field(default_factory=frozenset)
    labels: tuple = ()

    def __post_init__(self):
        n = int(self.node_count)
        if n < 0:
            raise ValueError("node_count must be nonnegative")
        canon = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop on agent {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} agents")
            canon.add((u, v) if u < v else (v, u))
        labels = tuple(str(x) for x in self.labels) if self.labels else tuple(str(i) for i in range(n))
        if len(labels) != n:
            raise ValueError("labels must have one entry per agent")
        object.__setattr__(self, "node_count", n)
        object.__setattr__(self, "edges", frozenset(canon))
        object.__setattr__(self, "labels", labels)

    def __eq__(self, other):
        if not isinstance(other, OneModeNetwork):
            return NotImplemented
        return (self.node_count, self.edges, self.labels) == (other.node_count, other.edges, other.labels)

    def __hash__(self):
        return hash((self.node_count, self.edges, self.labels))

    def __repr__(self):
        return f"OneModeNetwork(node_count={self.node_count}, edge_count={self.edge_count})"

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def neighbors(self) -> tuple:
        """Tuple of frozensets, one per agent."""
        nbrs = [set() for _ in range(self.node_count)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Dense boolean adjacency matrix (read-only)."""
        a = np.zeros((self.node_count, self.node_count), dtype=bool)
        if self.edges:
            idx = np.array(sorted(self.edges))
            a[idx[:, 0], idx[:, 1]] = True
            a[idx[:, 1], idx[:, 0]] = True
        a.setflags(write=False)
        return a

    def degrees(self) -> np.ndarray:
        return np.array([len(s) for s in self.neighbors], dtype=int)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbors[u]

    def is_connected(self) -> bool:
        if self.node_count == 0:
            return True
        return len(_bfs_hops(self.neighbors, 0)) == self.node_count

    def with_labels(self, labels: Sequence[str]) -> "OneModeNetwork":
        return OneModeNetwork(self.node_count, self.edges, tuple(labels))


# ---------------------------------------------------------------------------
# edge-list I/O


def load_edge_list(text: str | io.TextIOBase) -> OneModeNetwork:
    """Parse an edge list with one ``label label`` pair per line.

    Pairs may be separated by whitespace or commas. Blank lines and lines
    starting with ``#`` are skipped. Labels get dense ids in order of first
    appearance; repeated edges collapse.
    """
    if not isinstance(text, str):
        text = text.read()
    ids: dict[str, int] = {}
    edges = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected two node labels, got {len(parts)}")
        a, b = parts
        if a == b:
            raise ValueError(f"line {lineno}: self-loop on {a!r}")
        u = ids.setdefault(a, len(ids))
        v = ids.setdefault(b, len(ids))
        edges.add((min(u, v), max(u, v)))
    if not edges:
        raise ValueError("no edges")
    return OneModeNetwork(len(ids), frozenset(edges), tuple(ids))


def read_edge_list(path) -> OneModeNetwork:
    with open(path, encoding="utf-8") as fh:
        return load_edge_list(fh.read())


def format_edge_list(net: OneModeNetwork) -> str:
    """Edge list text, one ``label1 label2`` line per edge sorted by agent id."""
    lab = net.labels
    return "".join(f"{lab[u]} {lab[v]}\n" for u, v in sorted(net.edges))


def write_edge_list(path, net: OneModeNetwork) -> None:
    atomic_write_text(path, format_edge_list(net))


# ---------------------------------------------------------------------------
# statistics


def induced_density(net: OneModeNetwork, subset: Iterable[int]) -> float:
    """Fraction of agent pairs in ``subset`` that are tied."""
    members = sorted(set(subset))
    k = len(members)
    if k < 2:
        raise ValueError("density undefined for fewer than two agents")
    nbrs = net.neighbors
    member_set = set(members)
    ties = sum(len(nbrs[u] & member_set) for u in members) // 2
    return ties / (k * (k - 1) / 2)


def _bfs_hops(nbrs, source: int) -> dict:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in nbrs[u]:
            if w not in dist:
                dist[w] = du
                queue.append(w)
    return dist


def geodesic_distances(net: OneModeNetwork, strict: bool = False) -> np.ndarray:
    """All-pairs shortest hop counts by breadth-first search from every agent.

    Unreachable pairs get ``max finite distance + 1`` (at least 2, so a
    distance of 1 always means a tie) and the matrix stays usable for
    scaling. With ``strict=True`` they raise
    :class:`DisconnectedGraphError` instead.
    """
    n = net.node_count
    if n < 1:
        raise ValueError("geodesics need at least one agent")
    dist = np.full((n, n), -1.0)
    nbrs = net.neighbors
    for s in range(n):
        for t, h in _bfs_hops(nbrs, s).items():
            dist[s, t] = h
    unreachable = dist < 0
    if unreachable.any():
        if strict:
            raise DisconnectedGraphError("network is disconnected")
        dist[unreachable] = max(dist.max(), 1.0) + 1.0
    return dist


# ---------------------------------------------------------------------------
# cliques


def maximal_cliques(net: OneModeNetwork) -> list[frozenset]:
    """Enumerate all maximal cliques (Bron-Kerbosch with Tomita pivoting).

    Isolated agents are returned as singleton cliques. Output is sorted by
    the cliques' sorted member tuples, so it is independent of set ordering.
    """
    nbrs = net.neighbors
    found = []

    def expand(r, p, x):
        if not p and not x:
            found.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda u: len(p & nbrs[u]))
        for v in sorted(p - nbrs[pivot]):
            expand(r | {v}, p & nbrs[v], x & nbrs[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(range(net.node_count)), set())
    found.sort(key=lambda c: tuple(sorted(c)))
    return found


def _cached_cliques(net: OneModeNetwork) -> list[frozenset]:
    cache = net.__dict__.get("_maximal_cliques")
    if cache is None:
        cache = maximal_cliques(net)
        net.__dict__["_maximal_cliques"] = cache
    return cache


def sample_maximal_clique(net: OneModeNetwork, rng=None, method: str = "greedy") -> frozenset:
    """Draw a random maximal clique.

    ``greedy`` starts at a uniformly random agent and keeps adding a uniformly
    random common neighbour until none is left. It is cheap but not uniform
    over maximal cliques. ``uniform`` enumerates every maximal clique once
    (cached on the network) and picks one uniformly.
    """
    if net.node_count == 0:
        raise ValueError("cannot sample a clique from an empty network")
    rng = as_rng(rng)
    if method == "uniform":
        cliques = _cached_cliques(net)
        return cliques[int(rng.integers(len(cliques)))]
    if method != "greedy":
        raise ValueError(f"unknown clique method {method!r}")
    nbrs = net.neighbors
    start = int(rng.integers(net.node_count))
    clique = {start}
    candidates = set(nbrs[start])
    while candidates:
        pool = sorted(candidates)
        v = pool[int(rng.integers(len(pool)))]
        clique.add(v)
        candidates &= nbrs[v]
    return frozenset(clique)


# ---------------------------------------------------------------------------
# generators


def watts_strogatz(n: int, k: int, beta: float, rng=None) -> OneModeNetwork:
    """Small-world graph: ring lattice of degree ``k`` with rewired edges.

    Each lattice edge ``(u, u+j)`` is rewired with probability ``beta`` to
    ``(u, w)`` with ``w`` uniform over agents not already tied to ``u``. The
    edge count is always ``n*k/2``.
    """
    if k < 2 or k % 2 or n <= k:
        raise ValueError(f"need n > k >= 2 with k even, got n={n}, k={k}")
    if not 0.0 <= beta <= 1.0:
        raise ValueError("beta must lie in [0, 1]")
    rng = as_rng(rng)
    nbrs = [set() for _ in range(n)]
    for u in range(n):
        for j in range(1, k // 2 + 1):
            v = (u + j) % n
            nbrs[u].add(v)
            nbrs[v].add(u)
    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            if v not in nbrs[u] or rng.random() >= beta:
                continue
            choices = [w for w in range(n) if w != u and w not in nbrs[u]]
            if not choices:
                continue
            w = choices[int(rng.integers(len(choices)))]
            nbrs[u].discard(v)
            nbrs[v].discard(u)
            nbrs[u].add(w)
            nbrs[w].add(u)
    edges = {(u, v) for u in range(n) for v in nbrs[u] if u < v}
    return OneModeNetwork(n, frozenset(edges))


def connected_watts_strogatz(n: int, k: int, beta: float, rng=None, tries: int = 1000) -> OneModeNetwork:
    """Regenerate :func:`watts_strogatz` until the graph is connected."""
    rng = as_rng(rng)
    for _ in range(tries):
        net = watts_strogatz(n, k, beta, rng)
        if net.is_connected():
            return net
    raise RuntimeError(f"no connected graph after {tries} tries")


def karate_club() -> OneModeNetwork:
    """Zachary's karate club: 34 members (labelled 1-34), 78 ties."""
    text = resources.files("bigraph").joinpath("data/karate.txt").read_text(encoding="utf-8")
    net = load_edge_list(text)
    # relabel so agent id i carries member label i+1
    order = sorted(range(net.node_count), key=lambda i: int(net.labels[i]))
    new_id = {old: new for new, old in enumerate(order)}
    edges = frozenset((new_id[u], new_id[v]) for u, v in net.edges)
    return OneModeNetwork(net.node_count, edges, tuple(str(i + 1) for i in range(net.node_count)))
