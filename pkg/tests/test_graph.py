import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bigraph.graph import (
    DisconnectedGraphError,
    OneModeNetwork,
    connected_watts_strogatz,
    format_edge_list,
    geodesic_distances,
    induced_density,
    karate_club,
    load_edge_list,
    maximal_cliques,
    read_edge_list,
    sample_maximal_clique,
    watts_strogatz,
    write_edge_list,
)

from .conftest import gnp


def is_maximal_clique(net, clique):
    adj = net.adjacency
    if any(not adj[u, v] for u, v in itertools.combinations(clique, 2)):
        return False
    return all(not all(adj[v, u] for u in clique) for v in range(net.node_count) if v not in clique)


def floyd_warshall(net):
    n = net.node_count
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0)
    for u, v in net.edges:
        d[u, v] = d[v, u] = 1
    for k in range(n):
        d = np.minimum(d, d[:, [k]] + d[[k], :])
    return d


FIG2 = "A B\nA C\nB C\nC D\nD E\nD F\nD G\nE F\nE G\nF G"


class TestEdgeList:
    def test_minimal_path(self):
        net = load_edge_list("a b\nb c")
        assert (net.node_count, net.edge_count) == (3, 2)
        assert net.labels == ("a", "b", "c")

    def test_duplicates_collapse(self):
        net = load_edge_list("a b\na b\nb a")
        assert (net.node_count, net.edge_count) == (2, 1)

    def test_self_loop_rejected_with_line(self):
        with pytest.raises(ValueError, match="line 1"):
            load_edge_list("a a")
        with pytest.raises(ValueError, match="line 3"):
            load_edge_list("# header\na b\nc c\n")

    def test_empty(self):
        with pytest.raises(ValueError, match="no edges"):
            load_edge_list("# nothing here\n\n")

    def test_commas_and_comments(self):
        net = load_edge_list("# x\nx,y\ny, z\n")
        assert net.edge_count == 2

    def test_round_trip(self, tmp_path):
        net = karate_club()
        path = tmp_path / "k.txt"
        write_edge_list(path, net)
        again = read_edge_list(path)
        assert again.edge_count == 78
        assert {frozenset((again.labels[u], again.labels[v])) for u, v in again.edges} == {
            frozenset((net.labels[u], net.labels[v])) for u, v in net.edges}
        lines = path.read_text().splitlines()
        assert lines[0] == "1 2" and len(lines) == 78


def test_network_invariants():
    with pytest.raises(ValueError):
        OneModeNetwork(3, frozenset({(1, 1)}))
    with pytest.raises(ValueError):
        OneModeNetwork(2, frozenset({(0, 2)}))
    net = OneModeNetwork(3, frozenset({(2, 0), (0, 2), (1, 2)}))
    assert net.edges == {(0, 2), (1, 2)}
    assert (net.adjacency == net.adjacency.T).all()


class TestDensity:
    def test_clique(self):
        net = OneModeNetwork(4, frozenset(itertools.combinations(range(4), 2)))
        assert induced_density(net, range(4)) == 1.0

    def test_figure2_checkpoints(self):
        net = load_edge_list(FIG2)
        ids = {lab: i for i, lab in enumerate(net.labels)}
        club = [ids[x] for x in "DEFGC"]
        assert induced_density(net, club) == pytest.approx(0.70)
        assert induced_density(net, club + [ids["A"]]) == pytest.approx(8 / 15)
        assert round(100 * induced_density(net, club + [ids["A"]])) == 53

    def test_too_small(self):
        with pytest.raises(ValueError, match="density undefined"):
            induced_density(load_edge_list("a b"), [0])

    @given(st.integers(2, 12), st.floats(0, 1), st.integers(0, 2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_clique_and_independent_set(self, n, p, seed):
        net = gnp(n, p, seed)
        c = sample_maximal_clique(net, np.random.default_rng(seed))
        if len(c) >= 2:
            assert induced_density(net, c) == 1.0
        comp = OneModeNetwork(n, frozenset(itertools.combinations(range(n), 2)) - net.edges)
        ind = sample_maximal_clique(comp, np.random.default_rng(seed))
        if len(ind) >= 2:
            assert induced_density(net, ind) == 0.0


class TestGeodesics:
    def test_path(self):
        d = geodesic_distances(load_edge_list("a b\nb c"))
        assert d[0, 2] == 2

    def test_complete(self):
        net = OneModeNetwork(4, frozenset(itertools.combinations(range(4), 2)))
        d = geodesic_distances(net)
        assert (d[~np.eye(4, dtype=bool)] == 1).all()

    def test_karate_matches_exhaustive_oracle(self):
        net = karate_club()
        np.testing.assert_array_equal(geodesic_distances(net), floyd_warshall(net))

    def test_disconnected(self):
        net = OneModeNetwork(5, frozenset({(0, 1), (1, 2), (3, 4)}))
        d = geodesic_distances(net)
        assert d[0, 3] == 3  # max finite distance 2, plus one
        with pytest.raises(DisconnectedGraphError):
            geodesic_distances(net, strict=True)

    @given(st.integers(2, 14), st.floats(0.2, 0.8), st.integers(0, 2**32 - 1))
    @settings(max_examples=30, deadline=None)
    def test_metric_and_edges(self, n, p, seed):
        net = gnp(n, p, seed)
        d = geodesic_distances(net)
        assert (d == d.T).all() and (np.diag(d) == 0).all()
        for i, j, k in itertools.product(range(n), repeat=3):
            assert d[i, j] <= d[i, k] + d[k, j]
        assert ((d == 1) == net.adjacency).all()


class TestCliques:
    def test_triangle(self):
        net = load_edge_list("a b\nb c\na c")
        for method in ("greedy", "uniform"):
            assert sample_maximal_clique(net, np.random.default_rng(0), method) == {0, 1, 2}

    def test_star(self):
        net = load_edge_list("c x\nc y\nc z")
        seen = {sample_maximal_clique(net, np.random.default_rng(s)) for s in range(40)}
        assert seen == {frozenset({0, 1}), frozenset({0, 2}), frozenset({0, 3})}

    def test_isolated_gives_singleton(self):
        net = OneModeNetwork(3, frozenset({(0, 1)}))
        seen = {sample_maximal_clique(net, np.random.default_rng(s)) for s in range(30)}
        assert frozenset({2}) in seen

    def test_empty_network(self):
        with pytest.raises(ValueError):
            sample_maximal_clique(OneModeNetwork(0), np.random.default_rng(0))

    @pytest.mark.parametrize("method", ["greedy", "uniform"])
    def test_gnp_outputs_are_maximal(self, method):
        for seed in range(25):
            net = gnp(20, 0.3, seed)
            rng = np.random.default_rng(seed)
            for _ in range(10):
                assert is_maximal_clique(net, sample_maximal_clique(net, rng, method))

    def test_enumeration_matches_networkx(self):
        for seed in range(10):
            net = gnp(15, 0.4, seed)
            g = nx.Graph(list(net.edges))
            g.add_nodes_from(range(15))
            assert set(maximal_cliques(net)) == {frozenset(c) for c in nx.find_cliques(g)}

    def test_uniform_mode_is_uniform(self):
        # path a-b-c-d plus triangle on c,d,e: maximal cliques {a,b},{b,c},{c,d,e}
        net = load_edge_list("a b\nb c\nc d\nd e\nc e")
        rng = np.random.default_rng(5)
        counts = {}
        for _ in range(3000):
            c = sample_maximal_clique(net, rng, "uniform")
            counts[c] = counts.get(c, 0) + 1
        assert len(counts) == 3
        assert all(abs(v - 1000) < 120 for v in counts.values())

    def test_seed_determinism(self):
        net = gnp(30, 0.2, 1)
        a = [sample_maximal_clique(net, np.random.default_rng(9)) for _ in range(5)]
        b = [sample_maximal_clique(net, np.random.default_rng(9)) for _ in range(5)]
        assert a == b


class TestWattsStrogatz:
    def test_edge_count(self):
        assert watts_strogatz(50, 6, 0.1, np.random.default_rng(0)).edge_count == 150

    def test_lattice(self):
        net = watts_strogatz(20, 4, 0.0, np.random.default_rng(0))
        assert (net.degrees() == 4).all()

    def test_full_rewire_keeps_edge_count(self):
        for seed in range(100):
            net = watts_strogatz(50, 6, 1.0, np.random.default_rng(seed))
            assert net.edge_count == 150
        net = connected_watts_strogatz(50, 6, 1.0, np.random.default_rng(3))
        assert net.is_connected() and net.edge_count == 150

    @pytest.mark.parametrize("n,k", [(6, 6), (10, 3), (10, 0)])
    def test_invalid(self, n, k):
        with pytest.raises(ValueError):
            watts_strogatz(n, k, 0.1)

    @given(st.integers(7, 40), st.sampled_from([2, 4, 6]), st.floats(0, 1), st.integers(0, 2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_edge_count_property(self, n, k, beta, seed):
        net = watts_strogatz(n, k, beta, np.random.default_rng(seed))
        assert net.edge_count == n * k // 2
        assert net == watts_strogatz(n, k, beta, np.random.default_rng(seed))


class TestKarate:
    def test_size(self):
        net = karate_club()
        assert net.node_count == 34 and net.edge_count == 78
        assert (net.adjacency == net.adjacency.T).all()

    def test_matches_published_dataset(self):
        g = nx.karate_club_graph()
        ref = {frozenset((u, v)) for u, v in g.edges()}
        assert {frozenset(e) for e in karate_club().edges} == ref
        assert karate_club().labels[0] == "1"

    def test_format(self):
        text = format_edge_list(karate_club())
        assert text.count("\n") == 78
