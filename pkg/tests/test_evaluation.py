import csv
import io
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from bigraph.bipartite import TwoModeNetwork
from bigraph.evaluation import (
    P_GRID,
    CharacteristicsConfig,
    RecoveryConfig,
    extract_backbone,
    format_recovery_csv,
    network_characteristics,
    run_characteristics_experiment,
    run_recovery_experiment,
    similarity,
    skewness,
)
from bigraph.graph import OneModeNetwork, karate_club
from bigraph.nulls import curveball

from .conftest import gnp, random_incidence


class TestSkewness:
    def test_symmetric(self):
        assert skewness([1, 2, 3]) == 0.0

    def test_moment_oracle(self):
        # mean 2, central moments m2 = 80/5 = 16, m3 = 480/5 = 96, so 96 / 16**1.5
        assert skewness([0, 0, 0, 0, 10]) == pytest.approx(1.5, abs=1e-12)

    def test_undefined(self):
        with pytest.raises(ValueError, match="skewness undefined"):
            skewness([2, 2, 2, 2])
        with pytest.raises(ValueError, match="skewness undefined"):
            skewness([1, 2])

    @given(
        st.lists(st.integers(0, 50), min_size=3, max_size=40),
        st.floats(0.1, 10), st.floats(-100, 100),
    )
    @settings(max_examples=100, deadline=None)
    def test_affine(self, xs, a, b):
        assume(len(set(xs)) > 1)
        x = np.array(xs, dtype=float)
        g = skewness(x)
        assert skewness(a * x + b) == pytest.approx(g, abs=1e-7)
        assert skewness(-a * x + b) == pytest.approx(-g, abs=1e-7)


class TestSimilarity:
    def test_identity(self):
        net = karate_club()
        s = similarity(net, net)
        assert (s.simple_matching, s.correlation, s.jaccard) == (1.0, 1.0, 1.0)

    def test_complement(self):
        net = karate_club()
        n = net.node_count
        comp = OneModeNetwork(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n)) - net.edges)
        s = similarity(net, comp)
        assert s.simple_matching == 0.0 and s.jaccard == 0.0 and s.correlation == pytest.approx(-1.0)

    def test_hand_counts(self):
        a = OneModeNetwork(4, frozenset({(0, 1), (1, 2)}))
        b = OneModeNetwork(4, frozenset({(0, 1), (2, 3)}))
        s = similarity(a, b)
        # dyads: n11=1, n10=1, n01=1, n00=3
        assert s.simple_matching == pytest.approx(4 / 6)
        assert s.jaccard == pytest.approx(1 / 3)
        assert s.correlation == pytest.approx((1 * 3 - 1 * 1) / math.sqrt(2 * 4 * 2 * 4))

    def test_errors(self):
        with pytest.raises(ValueError):
            similarity(OneModeNetwork(3), OneModeNetwork(4))
        with pytest.raises(ValueError, match="correlation undefined"):
            similarity(karate_club(), OneModeNetwork(34))

    @given(st.integers(0, 2**32 - 1), st.integers(0, 2**32 - 1))
    @settings(max_examples=30, deadline=None)
    def test_symmetric(self, s1, s2):
        a, b = gnp(8, 0.4, s1), gnp(8, 0.4, s2)
        assume(0 < a.edge_count < 28 and 0 < b.edge_count < 28)
        assert similarity(a, b) == similarity(b, a)


class TestBackbone:
    def test_strong_pair_retained(self):
        rng = np.random.default_rng(0)
        m = (rng.random((12, 1000)) < 0.02).astype(int)
        # sharing every group would pin the pair in every null draw too
        m[0, :] = 0
        m[1, :] = 0
        m[0, :300] = 1
        m[1, :300] = 1
        bb = extract_backbone(TwoModeNetwork.from_incidence(m), 0.05, 20, rng)
        assert bb.has_edge(0, 1)
        assert bb.node_count == 12

    def test_isolates_never_tied(self):
        groups = [[0, 1, 2]] * 8 + [[1, 2]] * 4
        bip = TwoModeNetwork.from_groups(5, groups)
        bb = extract_backbone(bip, 0.05, 20, np.random.default_rng(0))
        assert not bb.neighbors[3] and not bb.neighbors[4]

    def test_alpha_monotone(self):
        bip = random_incidence(15, 60, 0.3, 2)
        low = extract_backbone(bip, 0.01, 40, np.random.default_rng(7))
        high = extract_backbone(bip, 0.2, 40, np.random.default_rng(7))
        assert low.edges <= high.edges

    def test_calibration_small(self):
        fractions = []
        for seed in range(5):
            rng = np.random.default_rng([3, seed])
            bip = curveball(random_incidence(20, 300, 0.3, seed), None, rng)
            bb = extract_backbone(bip, 0.1, 50, rng)
            fractions.append(bb.edge_count / 190)
        assert abs(np.mean(fractions) - 0.1) < 0.04

    def test_validation(self):
        bip = random_incidence(5, 5, 0.5, 0)
        with pytest.raises(ValueError):
            extract_backbone(bip, 0.05, 10)
        with pytest.raises(ValueError):
            extract_backbone(bip, 1.5, 20)


def test_network_characteristics():
    groups = [[0, 1, 2]] * 5 + [[3, 4]] * 3 + [[i] for i in range(8)]
    bip = TwoModeNetwork.from_groups(8, groups)
    res = network_characteristics(bip, 5, rng=np.random.default_rng(0))
    assert set(res) >= {"agent_skew", "group_skew", "cycle_ratio"}
    assert res["cycle_ratio"] > 1


class TestExperiments:
    def test_p_grid(self):
        assert len(P_GRID) == 13 and P_GRID[0] == 0.7 and P_GRID[-1] == 1.0
        assert [f"{p:.3f}" for p in P_GRID][:3] == ["0.700", "0.725", "0.750"]

    def test_small_sweep_shape_and_reproducibility(self):
        cfg = CharacteristicsConfig(seed=4, p_grid=(0.8, 1.0), replicates=2, null_replicates=3)
        a = run_characteristics_experiment(cfg)
        b = run_characteristics_experiment(cfg)
        assert len(a.rows) == 3 * 2 * 2
        assert a.to_csv() == b.to_csv()
        rows = list(csv.DictReader(io.StringIO(a.to_csv())))
        assert list(rows[0]) == ["model", "p", "replicate", "agent_skew", "group_skew", "cycle_ratio"]
        assert [(r["model"], r["p"], r["replicate"]) for r in rows][:3] == [
            ("teams", "0.800", "0"), ("teams", "0.800", "1"), ("teams", "1.000", "0")]
        assert len(a.summary) == 6
        assert "# model clubs" in a.gnuplot_table()
        assert a.summary_csv().startswith("model,p,n,")

    def test_workers_do_not_change_results(self):
        cfg = CharacteristicsConfig(seed=4, models=("clubs",), p_grid=(0.9,), replicates=2, null_replicates=2)
        serial = run_characteristics_experiment(cfg)
        from dataclasses import replace
        parallel = run_characteristics_experiment(replace(cfg, workers=2))
        assert serial.to_csv() == parallel.to_csv()

    def test_small_recovery(self):
        cfg = RecoveryConfig(seed=2, groups=150, backbone_replicates=20)
        rows = run_recovery_experiment(cfg)
        assert [r["model"] for r in rows] == ["teams", "clubs", "organizations"]
        assert all(r["backbone"].node_count == 34 for r in rows)
        text = format_recovery_csv(rows)
        assert text.splitlines()[0] == "model,simple_matching,correlation,jaccard,isolates"
        assert len(text.splitlines()) == 4
        assert format_recovery_csv(run_recovery_experiment(cfg)) == text
