"""
Three ways a group can grow out of a network
============================================

Each model takes a one-mode network and returns one group. Here they run on
the small networks used to narrate them, with a real random generator.
"""

from collections import Counter

import numpy as np

from bigraph import blau_space, clubs_group, load_edge_list, organizations_group, teams_group

rng = np.random.default_rng(2024)

# Teams: start from a clique and swap some incumbents for newcomers.
colleagues = load_edge_list("A B\nA C\nB C\nC D\nD E")
for p in (1.0, 0.5):
    teams = Counter(
        "".join(sorted(colleagues.labels[i] for i in teams_group(colleagues, p, rng))) for _ in range(1000)
    )
    print(f"teams, p={p}: most common {teams.most_common(4)}")

# Clubs: a clique recruits friends as long as the club stays dense enough.
friends = load_edge_list("A B\nA C\nB C\nC D\nD E\nD F\nD G\nE F\nE G\nF G")
for p in (0.7, 0.5):
    club = clubs_group(friends, p, rng, clique={3, 4, 5, 6})
    print(f"clubs, p={p}: seed DEFG grows to {''.join(sorted(friends.labels[i] for i in club))}")

# Organizations: recruit from a niche in the network's Blau space.
neighbours = load_edge_list("A B\nA C\nB C\nB D\nC D\nD E\nE F\nD G\nG F")
blau = blau_space(neighbours, d=2)
sizes = Counter(len(organizations_group(neighbours, blau, 0.8, rng)) for _ in range(2000))
print("organization sizes:", dict(sorted(sizes.items())))
