"""Characteristic statistics, projection backbones, similarity indices, and the
two end-to-end experiments (small-world characteristics sweep and karate
recovery)."""

from __future__ import annotations

import csv
import io
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ._util import as_rng, atomic_write_text, child_seeds
from .bipartite import TwoModeNetwork, degrees, project
from .graph import OneModeNetwork, connected_watts_strogatz, karate_club
from .models import MODELS, ModelConfig, generate_two_mode
from .nulls import curveball_rows, default_iterations, four_cycle_ratio

__all__ = [
    "skewness",
    "extract_backbone",
    "SimilarityReport",
    "similarity",
    "network_characteristics",
    "CharacteristicsConfig",
    "EvalReport",
    "run_characteristics_experiment",
    "RecoveryConfig",
    "run_recovery_experiment",
    "format_recovery_csv",
    "P_GRID",
]

P_GRID = tuple(round(0.7 + 0.025 * i, 3) for i in range(13))


def skewness(values) -> float:
    """Fisher's moment coefficient of skewness, ``m3 / m2**1.5``.

    Central moments use the ``1/n`` normalisation.
    """
    x = np.asarray(values, dtype=float)
    if x.size < 3:
        raise ValueError("skewness undefined for fewer than three values")
    dev = x - x.mean()
    m2 = float(np.mean(dev ** 2))
    if m2 <= 1e-300 or np.allclose(dev, 0.0):
        raise ValueError("skewness undefined for zero variance")
    m3 = float(np.mean(dev ** 3))
    return m3 / m2 ** 1.5


def _null_projections(bip: TwoModeNetwork, replicates: int, iterations: int, rng) -> np.ndarray:
    base = bip.groups_of()
    out = np.empty((replicates, bip.agent_count, bip.agent_count), dtype=np.int64)
    m = np.zeros((bip.agent_count, bip.group_count), dtype=np.int64)
    for r, ss in enumerate(child_seeds(rng, replicates)):
        rnd = random.Random(int(np.random.default_rng(ss).integers(2**63)))
        rows = [set(gs) for gs in base]
        curveball_rows(rows, iterations, rnd)
        m[:] = 0
        for a, gs in enumerate(rows):
            if gs:
                m[a, list(gs)] = 1
        out[r] = m @ m.T
    return out


def extract_backbone(
    bip: TwoModeNetwork,
    alpha: float = 0.05,
    replicates: int = 100,
    rng=None,
    iterations: Optional[int] = None,
) -> OneModeNetwork:
    """Unweighted backbone of the bipartite projection under a fixed-degree null.

    Agents i and j are tied when their observed co-membership count is
    strictly above the ``1 - alpha`` quantile of that count over
    ``replicates`` curveball randomizations of ``bip`` (linear
    interpolation between order statistics).
    """
    if replicates < 20:
        raise ValueError("backbone needs at least 20 null replicates")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    if iterations is None:
        iterations = default_iterations(bip)
    rng = as_rng(rng)
    observed = project(bip)
    null = _null_projections(bip, replicates, iterations, rng)
    threshold = np.quantile(null, 1.0 - alpha, axis=0)
    keep = observed > threshold
    iu, ju = np.nonzero(np.triu(keep, k=1))
    return OneModeNetwork(bip.agent_count, frozenset(zip(iu.tolist(), ju.tolist())), bip.agent_labels)


@dataclass(frozen=True)
class SimilarityReport:
    simple_matching: float
    correlation: float
    jaccard: float


def similarity(a: OneModeNetwork, b: OneModeNetwork) -> SimilarityReport:
    """Dyad-level agreement between two graphs on the same agents.

    Simple matching is the share of dyads on which the graphs agree,
    correlation is the phi coefficient of the two edge indicators, and
    Jaccard is shared ties over ties in either graph.
    """
    if a.node_count != b.node_count:
        raise ValueError("graphs have different node counts")
    n = a.node_count
    if n < 2:
        raise ValueError("need at least two agents")
    iu = np.triu_indices(n, k=1)
    x = a.adjacency[iu]
    y = b.adjacency[iu]
    n11 = int(np.sum(x & y))
    n00 = int(np.sum(~x & ~y))
    n10 = int(np.sum(x & ~y))
    n01 = int(np.sum(~x & y))
    total = x.size
    sm = (n11 + n00) / total
    union = n11 + n10 + n01
    jac = n11 / union if union else 1.0
    denom = (n11 + n10) * (n01 + n00) * (n11 + n01) * (n10 + n00)
    if denom == 0:
        raise ValueError("correlation undefined: an edge indicator is constant")
    phi = (n11 * n00 - n10 * n01) / math.sqrt(denom)
    return SimilarityReport(sm, phi, jac)


def _safe_skew(values) -> float:
    try:
        return skewness(values)
    except ValueError:
        return math.nan


def network_characteristics(bip: TwoModeNetwork, replicates: int = 25, iterations=None, rng=None) -> dict:
    """Agent-degree skewness, group-degree skewness and four-cycle ratio."""
    agent_deg, group_deg = degrees(bip)
    stats = four_cycle_ratio(bip, replicates, iterations, rng)
    return {
        "agent_skew": skewness(agent_deg),
        "group_skew": skewness(group_deg),
        "cycle_ratio": stats.ratio,
        "four_cycles": stats.observed,
        "null_mean": float(stats.null_values.mean()),
    }


# ---------------------------------------------------------------------------
# characteristics sweep


@dataclass(frozen=True)
class CharacteristicsConfig:
    seed: int = 0
    models: tuple = MODELS
    p_grid: tuple = P_GRID
    replicates: int = 25
    nodes: int = 50
    k: int = 6
    beta: float = 0.25
    groups: int = 50
    null_replicates: int = 25
    null_iterations: Optional[int] = None
    d: int = 2
    outside_prob_mode: str = "one-minus-p"
    clique_method: str = "uniform"
    workers: Optional[int] = None


@dataclass
class EvalReport:
    """Per-cell sweep rows plus per-(model, p) means and 95% half-widths."""

    rows: list
    summary: list = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["model", "p", "replicate", "agent_skew", "group_skew", "cycle_ratio"])
        for r in self.rows:
            w.writerow([r["model"], f"{r['p']:.3f}", r["replicate"],
                        _fmt(r["agent_skew"]), _fmt(r["group_skew"]), _fmt(r["cycle_ratio"])])
        return buf.getvalue()

    def summary_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        cols = ["model", "p", "n", "agent_skew_mean", "agent_skew_hw", "group_skew_mean", "group_skew_hw",
                "cycle_ratio_mean", "cycle_ratio_hw", "flag"]
        w.writerow(cols)
        for s in self.summary:
            w.writerow([s["model"], f"{s['p']:.3f}", s["n"]] + [_fmt(s[c]) for c in cols[3:9]] + [s["flag"]])
        return buf.getvalue()

    def gnuplot_table(self) -> str:
        """Whitespace table, one block per model separated by two blank lines."""
        lines = ["# p agent_skew_mean agent_skew_hw group_skew_mean group_skew_hw cycle_ratio_mean cycle_ratio_hw"]
        for model in dict.fromkeys(s["model"] for s in self.summary):
            lines.append(f"# model {model}")
            for s in (s for s in self.summary if s["model"] == model):
                vals = [s[c] for c in ("agent_skew_mean", "agent_skew_hw", "group_skew_mean", "group_skew_hw",
                                       "cycle_ratio_mean", "cycle_ratio_hw")]
                lines.append(" ".join([f"{s['p']:.3f}"] + [f"{v:.6g}" for v in vals]))
            lines += ["", ""]
        return "\n".join(lines) + "\n"


def _fmt(x) -> str:
    return repr(float(x))


def _mean_hw(values) -> tuple[float, float]:
    v = np.asarray([x for x in values if np.isfinite(x)], dtype=float)
    if v.size == 0:
        return math.nan, math.nan
    if v.size == 1:
        return float(v[0]), math.nan
    return float(v.mean()), 1.96 * float(v.std(ddof=1)) / math.sqrt(v.size)


def _characteristics_cell(job):
    cfg, mi, pi, rep = job
    model, p = cfg.models[mi], cfg.p_grid[pi]
    graph_ss, group_ss, null_ss = np.random.SeedSequence([cfg.seed, mi, pi, rep]).spawn(3)
    net = connected_watts_strogatz(cfg.nodes, cfg.k, cfg.beta, np.random.default_rng(graph_ss))
    mcfg = ModelConfig(model, p, cfg.groups, seed=group_ss, d=cfg.d,
                       outside_prob_mode=cfg.outside_prob_mode, clique_method=cfg.clique_method)
    bip = generate_two_mode(net, mcfg)
    agent_deg, group_deg = degrees(bip)
    stats = four_cycle_ratio(bip, cfg.null_replicates, cfg.null_iterations, np.random.default_rng(null_ss))
    return {
        "model": model, "p": p, "replicate": rep,
        "agent_skew": _safe_skew(agent_deg), "group_skew": _safe_skew(group_deg),
        "cycle_ratio": stats.ratio,
    }


def _worker_count(requested: Optional[int]) -> int:
    if requested is not None:
        return max(1, int(requested))
    env = os.environ.get("BIGRAPH_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"BIGRAPH_THREADS must be an integer, got {env!r}") from None
    return 1


def _run_jobs(fn, jobs, workers: int) -> list:
    if workers <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def run_characteristics_experiment(cfg: CharacteristicsConfig = CharacteristicsConfig()) -> EvalReport:
    """Sweep models x p-grid x replicates on fresh connected small worlds.

    Each cell draws a connected Watts-Strogatz graph, generates ``cfg.groups``
    groups, and records both degree skewnesses and the four-cycle ratio
    against curveball nulls. Cells have their own seeds derived from
    ``(cfg.seed, model index, p index, replicate)``, so results do not depend
    on execution order or worker count.

    Summary rows are flagged ``nonpositive_group_skew`` (clubs, expected at
    low p) or ``nonpositive_agent_skew`` / ``cycle_ratio_le_1`` when a mean
    falls on the wrong side.
    """
    jobs = [(cfg, mi, pi, rep)
            for mi in range(len(cfg.models))
            for pi in range(len(cfg.p_grid))
            for rep in range(cfg.replicates)]
    rows = _run_jobs(_characteristics_cell, jobs, _worker_count(cfg.workers))
    summary = []
    for mi, model in enumerate(cfg.models):
        for pi, p in enumerate(cfg.p_grid):
            cell = [r for r in rows if r["model"] == model and r["p"] == p]
            s = {"model": model, "p": p, "n": len(cell)}
            for key in ("agent_skew", "group_skew", "cycle_ratio"):
                s[f"{key}_mean"], s[f"{key}_hw"] = _mean_hw(r[key] for r in cell)
            flags = []
            if not s["agent_skew_mean"] > 0:
                flags.append("nonpositive_agent_skew")
            if not s["group_skew_mean"] > 0:
                flags.append("nonpositive_group_skew")
            if not s["cycle_ratio_mean"] > 1:
                flags.append("cycle_ratio_le_1")
            s["flag"] = ";".join(flags)
            summary.append(s)
    return EvalReport(rows, summary)


# ---------------------------------------------------------------------------
# karate recovery


@dataclass(frozen=True)
class RecoveryConfig:
    seed: int = 0
    models: tuple = MODELS
    p: float = 0.8
    groups: int = 1000
    alpha: float = 0.05
    backbone_replicates: int = 100
    d: int = 2
    outside_prob_mode: str = "one-minus-p"
    clique_method: str = "uniform"
    workers: Optional[int] = None


def _recovery_cell(job):
    cfg, mi, net = job
    model = cfg.models[mi]
    group_ss, null_ss = np.random.SeedSequence([cfg.seed, mi]).spawn(2)
    mcfg = ModelConfig(model, cfg.p, cfg.groups, seed=group_ss, d=cfg.d,
                       outside_prob_mode=cfg.outside_prob_mode, clique_method=cfg.clique_method)
    bip = generate_two_mode(net, mcfg)
    backbone = extract_backbone(bip, cfg.alpha, cfg.backbone_replicates, np.random.default_rng(null_ss))
    agent_deg, _ = degrees(bip)
    try:
        sim = similarity(net, backbone)
    except ValueError:
        sim = SimilarityReport(math.nan, math.nan, math.nan)
    return {
        "model": model,
        "simple_matching": sim.simple_matching,
        "correlation": sim.correlation,
        "jaccard": sim.jaccard,
        "isolates": int(np.sum(agent_deg == 0)),
        "backbone": backbone,
    }


def run_recovery_experiment(cfg: RecoveryConfig = RecoveryConfig(), net: Optional[OneModeNetwork] = None) -> list[dict]:
    """Generate groups from the karate club (or ``net``), extract the projection
    backbone, and compare it with the source network. One dict per model,
    holding the similarity indices, the isolate count and the backbone."""
    if net is None:
        net = karate_club()
    jobs = [(cfg, mi, net) for mi in range(len(cfg.models))]
    return _run_jobs(_recovery_cell, jobs, _worker_count(cfg.workers))


def format_recovery_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["model", "simple_matching", "correlation", "jaccard", "isolates"])
    for r in rows:
        w.writerow([r["model"], _fmt(r["simple_matching"]), _fmt(r["correlation"]), _fmt(r["jaccard"]), r["isolates"]])
    return buf.getvalue()


def write_text(path, text: str) -> None:
    atomic_write_text(path, text)
