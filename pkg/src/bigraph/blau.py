"""Blau space: a Euclidean embedding of network geodesics, and niches in it."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from ._util import as_rng, atomic_write_text
from .graph import OneModeNetwork, geodesic_distances

__all__ = [
    "BlauSpace",
    "NicheSpec",
    "embed_classical_mds",
    "blau_space",
    "sample_niche",
    "niche_partition",
    "format_coordinates",
    "write_coordinates",
]

EIGEN_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class BlauSpace:
    """Agent coordinates in ``dimension`` dimensions with their distance matrix."""

    coordinates: np.ndarray
    distances: np.ndarray

    @property
    def dimension(self) -> int:
        return self.coordinates.shape[1]

    @property
    def size(self) -> int:
        return self.coordinates.shape[0]

    @classmethod
    def from_coordinates(cls, coords) -> "BlauSpace":
        x = np.array(coords, dtype=float)
        if x.ndim == 1:
            x = x[:, None]
        x.setflags(write=False)
        diff = x[:, None, :] - x[None, :, :]
        dist = np.sqrt((diff ** 2).sum(axis=-1))
        dist.setflags(write=False)
        return cls(x, dist)

    def distance_range(self) -> tuple[float, float]:
        """Smallest and largest off-diagonal distance."""
        n = self.size
        if n < 2:
            return 0.0, 0.0
        off = self.distances[~np.eye(n, dtype=bool)]
        return float(off.min()), float(off.max())


@dataclass(frozen=True)
class NicheSpec:
    center: int
    radius: float


def embed_classical_mds(dist, d: int = 2) -> BlauSpace:
    """Classical (Torgerson) scaling of a distance matrix into ``d`` dimensions.

    The squared distances are double centred and the top ``d`` eigenpairs give
    the coordinates. Eigenvalues below ``1e-10`` times the largest are taken
    as zero, as are negative ones. Each axis is flipped so that its first
    nonzero loading is positive.
    """
    dist = np.asarray(dist, dtype=float)
    n = dist.shape[0]
    if dist.ndim != 2 or dist.shape != (n, n):
        raise ValueError("distance matrix must be square")
    if n < 2:
        raise ValueError("scaling needs at least two points")
    if not 1 <= d <= n - 1:
        raise ValueError(f"dimension must lie in [1, {n - 1}], got {d}")
    if not np.isfinite(dist).all():
        raise ValueError("distance matrix has non-finite entries")
    if not np.allclose(dist, dist.T):
        raise ValueError("distance matrix is not symmetric")

    j = np.eye(n) - np.full((n, n), 1.0 / n)
    b = -0.5 * j @ (dist ** 2) @ j
    b = (b + b.T) / 2
    evals, evecs = np.linalg.eigh(b)
    order = np.argsort(evals)[::-1][:d]
    evals, evecs = evals[order], evecs[:, order]
    top = max(evals[0], 0.0)
    evals = np.where(evals > EIGEN_RTOL * top, evals, 0.0)
    coords = evecs * np.sqrt(evals)
    for k in range(d):
        col = coords[:, k]
        nz = np.flatnonzero(np.abs(col) > 1e-12)
        if nz.size and col[nz[0]] < 0:
            coords[:, k] = -col
    return BlauSpace.from_coordinates(coords)


def blau_space(net: OneModeNetwork, d: int = 2, strict: bool = False) -> BlauSpace:
    """Embed a network's geodesic distances. A single agent sits at the origin."""
    if net.node_count == 1:
        return BlauSpace.from_coordinates(np.zeros((1, d)))
    return embed_classical_mds(geodesic_distances(net, strict=strict), d)


def sample_niche(blau: BlauSpace, rng=None, shape=(1.0, 10.0)) -> NicheSpec:
    """Random niche: Beta-distributed radius rescaled onto the distance range,
    centred on a uniformly random agent.

    The radius draw comes first, then the centre.
    """
    rng = as_rng(rng)
    a, b = shape
    raw = float(rng.beta(a, b))
    lo, hi = blau.distance_range()
    radius = raw * (hi - lo) + lo
    center = int(rng.integers(blau.size))
    return NicheSpec(center, radius)


def niche_partition(blau: BlauSpace, niche: NicheSpec) -> tuple[list[int], list[int]]:
    """Agents inside (distance <= radius) and outside the niche.

    The outside list is ordered by distance from the centre, ties by agent id.
    """
    dc = blau.distances[niche.center]
    inside = [i for i in range(blau.size) if dc[i] <= niche.radius]
    outside = sorted((i for i in range(blau.size) if dc[i] > niche.radius), key=lambda i: (dc[i], i))
    return inside, outside


def format_coordinates(blau: BlauSpace, labels=None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["agent", *(f"x{k + 1}" for k in range(blau.dimension))])
    for i in range(blau.size):
        w.writerow([labels[i] if labels is not None else i, *(repr(float(v)) for v in blau.coordinates[i])])
    return buf.getvalue()


def write_coordinates(path, blau: BlauSpace, labels=None) -> None:
    atomic_write_text(path, format_coordinates(blau, labels))
