"""
Blau space of the karate club
=============================

Geodesic distances are embedded in two dimensions by classical scaling.
Ties should be short in this space, and most niches should be small.
"""

import numpy as np

from bigraph import blau_space, karate_club, sample_niche
from bigraph.blau import niche_partition

net = karate_club()
blau = blau_space(net, d=2)

adj = net.adjacency
off = ~np.eye(net.node_count, dtype=bool)
print(f"mean distance between friends:     {blau.distances[adj].mean():.3f}")
print(f"mean distance between non-friends: {blau.distances[off & ~adj].mean():.3f}")

rng = np.random.default_rng(0)
sizes = [len(niche_partition(blau, sample_niche(blau, rng))[0]) for _ in range(5000)]
print("niche sizes (agents inside): median", int(np.median(sizes)), "max", max(sizes))

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    x, y = blau.coordinates.T
    fig, ax = plt.subplots(figsize=(5, 5))
    for u, v in net.edges:
        ax.plot([x[u], x[v]], [y[u], y[v]], color="0.8", lw=0.6, zorder=1)
    ax.scatter(x, y, zorder=2)
    for i, lab in enumerate(net.labels):
        ax.annotate(lab, (x[i], y[i]), fontsize=7)
    ax.set_title("karate club in Blau space")
    fig.savefig("karate_blau_space.png", dpi=120)
    print("wrote karate_blau_space.png")
