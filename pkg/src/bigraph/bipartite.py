"""Two-mode (agent x group) networks: degrees, four-cycles, projection and I/O."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from ._util import atomic_write_text

__all__ = [
    "TwoModeNetwork",
    "degrees",
    "count_four_cycles",
    "project",
    "format_incidence",
    "parse_incidence",
    "read_incidence",
    "write_incidence",
    "format_coordinate_list",
    "parse_coordinate_list",
]


@dataclass(frozen=True, eq=False)
class TwoModeNetwork:
    """Binary membership structure between agents and groups.

    ``memberships`` holds ``(agent, group)`` pairs. Agents or groups without
    any membership are allowed and kept.
    """

    agent_count: int
    group_count: int
    memberships: frozenset = field(default_factory=frozenset)
    agent_labels: tuple = ()
    group_labels: tuple = ()

    def __post_init__(self):
        na, ng = int(self.agent_count), int(self.group_count)
        if na < 0 or ng < 0:
            raise ValueError("counts must be nonnegative")
        pairs = frozenset((int(a), int(g)) for a, g in self.memberships)
        for a, g in pairs:
            if not (0 <= a < na and 0 <= g < ng):
                raise ValueError(f"membership ({a}, {g}) out of range")
        alab = tuple(str(x) for x in self.agent_labels) if self.agent_labels else tuple(str(i) for i in range(na))
        glab = tuple(str(x) for x in self.group_labels) if self.group_labels else tuple(f"g{j + 1}" for j in range(ng))
        if len(alab) != na or len(glab) != ng:
            raise ValueError("label count does not match node count")
        object.__setattr__(self, "agent_count", na)
        object.__setattr__(self, "group_count", ng)
        object.__setattr__(self, "memberships", pairs)
        object.__setattr__(self, "agent_labels", alab)
        object.__setattr__(self, "group_labels", glab)

    @classmethod
    def from_groups(cls, agent_count: int, groups: Sequence[Iterable[int]], agent_labels=(), group_labels=()):
        """Build from a list of member collections, one per group."""
        pairs = frozenset((int(a), g) for g, members in enumerate(groups) for a in members)
        return cls(agent_count, len(groups), pairs, tuple(agent_labels), tuple(group_labels))

    @classmethod
    def from_incidence(cls, matrix, agent_labels=(), group_labels=()):
        m = np.asarray(matrix)
        if m.ndim != 2:
            raise ValueError("incidence must be two-dimensional")
        if not np.isin(m, (0, 1)).all():
            raise ValueError("incidence must be binary")
        rows, cols = np.nonzero(m)
        return cls(m.shape[0], m.shape[1], frozenset(zip(rows.tolist(), cols.tolist())),
                   tuple(agent_labels), tuple(group_labels))

    def __eq__(self, other):
        if not isinstance(other, TwoModeNetwork):
            return NotImplemented
        return (self.agent_count, self.group_count, self.memberships, self.agent_labels, self.group_labels) == (
            other.agent_count, other.group_count, other.memberships, other.agent_labels, other.group_labels)

    def __hash__(self):
        return hash((self.agent_count, self.group_count, self.memberships))

    def __repr__(self):
        return (f"TwoModeNetwork(agent_count={self.agent_count}, group_count={self.group_count}, "
                f"memberships={len(self.memberships)})")

    @cached_property
    def incidence(self) -> np.ndarray:
        """Dense ``agent_count x group_count`` 0/1 matrix (read-only)."""
        m = np.zeros((self.agent_count, self.group_count), dtype=np.int64)
        if self.memberships:
            idx = np.array(sorted(self.memberships))
            m[idx[:, 0], idx[:, 1]] = 1
        m.setflags(write=False)
        return m

    def groups_of(self) -> list[list[int]]:
        """Sorted group ids per agent."""
        out = [[] for _ in range(self.agent_count)]
        for a, g in sorted(self.memberships):
            out[a].append(g)
        return out

    def members_of(self) -> list[list[int]]:
        """Sorted agent ids per group."""
        out = [[] for _ in range(self.group_count)]
        for a, g in sorted(self.memberships, key=lambda t: (t[1], t[0])):
            out[g].append(a)
        return out

    def relabel(self, agent_perm: Sequence[int] | None = None, group_perm: Sequence[int] | None = None):
        """Return a copy with agent ``a`` moved to ``agent_perm[a]`` (likewise groups).

        Labels travel with the nodes they belong to.
        """
        ap = list(range(self.agent_count)) if agent_perm is None else list(agent_perm)
        gp = list(range(self.group_count)) if group_perm is None else list(group_perm)
        alab = [None] * self.agent_count
        glab = [None] * self.group_count
        for a, new in enumerate(ap):
            alab[new] = self.agent_labels[a]
        for g, new in enumerate(gp):
            glab[new] = self.group_labels[g]
        pairs = frozenset((ap[a], gp[g]) for a, g in self.memberships)
        return TwoModeNetwork(self.agent_count, self.group_count, pairs, tuple(alab), tuple(glab))


def degrees(bip: TwoModeNetwork) -> tuple[np.ndarray, np.ndarray]:
    """Agent degrees (groups per agent) and group degrees (members per group)."""
    inc = bip.incidence
    return inc.sum(axis=1), inc.sum(axis=0)


def project(bip: TwoModeNetwork) -> np.ndarray:
    """Co-membership matrix ``B B^T``: entry (i, j) counts groups shared by i and j.

    The diagonal holds each agent's degree.
    """
    inc = bip.incidence
    return inc @ inc.T


def count_four_cycles(bip: TwoModeNetwork) -> int:
    """Number of 2x2 complete sub-bicliques: sum over agent pairs of C(shared, 2)."""
    w = project(bip)
    iu = np.triu_indices(bip.agent_count, k=1)
    shared = w[iu]
    return int((shared * (shared - 1) // 2).sum())


# ---------------------------------------------------------------------------
# incidence CSV: header "agent,<group labels>", then one 0/1 row per agent


def format_incidence(bip: TwoModeNetwork) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["agent", *bip.group_labels])
    inc = bip.incidence
    for a in range(bip.agent_count):
        writer.writerow([bip.agent_labels[a], *inc[a].tolist()])
    return buf.getvalue()


def parse_incidence(text: str) -> TwoModeNetwork:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise ValueError("incidence CSV is empty")
    header = rows[0]
    if not header:
        raise ValueError("incidence CSV header is empty")
    group_labels = header[1:]
    width = len(header)
    agent_labels = []
    pairs = set()
    for r, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != width:
            raise ValueError(f"row {r}: expected {width} cells, got {len(row)}")
        a = len(agent_labels)
        agent_labels.append(row[0])
        for c, cell in enumerate(row[1:]):
            cell = cell.strip()
            if cell == "1":
                pairs.add((a, c))
            elif cell != "0":
                raise ValueError(f"row {r}, column {c + 2}: non-binary cell {cell!r}")
    return TwoModeNetwork(len(agent_labels), len(group_labels), frozenset(pairs),
                          tuple(agent_labels), tuple(group_labels))


def read_incidence(path) -> TwoModeNetwork:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_incidence(fh.read())


def write_incidence(path, bip: TwoModeNetwork) -> None:
    atomic_write_text(path, format_incidence(bip))


# ---------------------------------------------------------------------------
# coordinate list: one "agent group" line per membership


def format_coordinate_list(bip: TwoModeNetwork) -> str:
    al, gl = bip.agent_labels, bip.group_labels
    return "".join(f"{al[a]} {gl[g]}\n" for a, g in sorted(bip.memberships))


def parse_coordinate_list(text: str, agent_labels: Sequence[str] | None = None) -> TwoModeNetwork:
    """Parse ``agent group`` lines. Pass ``agent_labels`` to keep agents with no
    memberships and to fix the agent order."""
    aid: dict[str, int] = {}
    if agent_labels is not None:
        aid = {lab: i for i, lab in enumerate(agent_labels)}
    gid: dict[str, int] = {}
    pairs = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'agent group'")
        a, g = parts
        if a not in aid:
            if agent_labels is not None:
                raise ValueError(f"line {lineno}: unknown agent {a!r}")
            aid[a] = len(aid)
        gi = gid.setdefault(g, len(gid))
        pairs.add((aid[a], gi))
    return TwoModeNetwork(len(aid), len(gid), frozenset(pairs), tuple(aid), tuple(gid))
