"""Command-line interface: ``bigraph <subcommand>`` (or ``python -m bigraph``).

Exit codes: 0 success, 1 runtime error, 2 invalid flags.
"""

from __future__ import annotations

import argparse
import os
import secrets
import sys

import numpy as np

from . import bipartite, evaluation, graph, models
from ._util import atomic_write_text

EXIT_RUNTIME = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _ws_spec(text: str):
    try:
        n, k, beta = text.split(",")
        return int(n), int(k), float(beta)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--ws expects n,k,beta (e.g. 50,6,0.1), got {text!r}") from None


def _probability(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {v}")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {v}")
    return v


def _resolve_seed(seed):
    if seed is None:
        seed = secrets.randbits(63)
        print(f"seed: {seed}")
    return seed


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bigraph", description="Generate two-mode networks from one-mode networks.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a two-mode network and write its incidence CSV")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="EDGELIST", help="edge-list file of the one-mode network")
    src.add_argument("--karate", action="store_true", help="use Zachary's karate club")
    src.add_argument("--ws", type=_ws_spec, metavar="N,K,BETA", help="connected Watts-Strogatz small world")
    g.add_argument("--model", choices=models.MODELS, required=True)
    g.add_argument("--p", type=_probability, required=True)
    g.add_argument("--groups", type=_nonneg_int, required=True)
    g.add_argument("--d", type=int, default=2, help="Blau space dimension (organizations)")
    g.add_argument("--outside-mode", choices=models.OUTSIDE_MODES, default="one-minus-p")
    g.add_argument("--clique-method", choices=("greedy", "uniform"), default="greedy")
    g.add_argument("--seed", type=int)
    g.add_argument("--output", default="incidence.csv")
    g.add_argument("--format", choices=("csv", "coords"), default="csv",
                   help="incidence CSV or 'agent group' coordinate list")

    s = sub.add_parser("stats", help="degree skewness and four-cycle ratio of an incidence CSV")
    s.add_argument("--incidence", required=True)
    s.add_argument("--null-replicates", type=int, default=25)
    s.add_argument("--iterations", type=int, help="curveball trades per replicate (default 5 x agents)")
    s.add_argument("--seed", type=int)

    b = sub.add_parser("backbone", help="extract the projection backbone of an incidence CSV")
    b.add_argument("--incidence", required=True)
    b.add_argument("--alpha", type=float, default=0.05)
    b.add_argument("--replicates", type=int, default=100)
    b.add_argument("--seed", type=int)
    b.add_argument("--output", required=True)

    for name, helptext in (("experiment-characteristics", "small-world characteristics sweep"),
                           ("experiment-recovery", "karate club recovery experiment")):
        e = sub.add_parser(name, help=helptext)
        e.add_argument("--seed", type=int)
        e.add_argument("--output-dir", default=".")
        e.add_argument("--replicates", type=int, help="override replicate count")
        e.add_argument("--clique-method", choices=("greedy", "uniform"), default="uniform")
        e.add_argument("--outside-mode", choices=models.OUTSIDE_MODES, default="one-minus-p")
        if name == "experiment-characteristics":
            e.add_argument("--beta", type=_probability, default=evaluation.CharacteristicsConfig.beta)

    d = sub.add_parser("datasets", help="export bundled datasets")
    d.add_argument("--karate", action="store_true", required=True)
    d.add_argument("--output", required=True)
    return parser


def _cmd_generate(args) -> None:
    seed = _resolve_seed(args.seed)
    if args.input:
        net = graph.read_edge_list(args.input)
    elif args.karate:
        net = graph.karate_club()
    else:
        n, k, beta = args.ws
        try:
            net = graph.connected_watts_strogatz(n, k, beta, np.random.default_rng([seed, 0]))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    cfg = models.ModelConfig(args.model, args.p, args.groups, seed=seed, d=args.d,
                             outside_prob_mode=args.outside_mode, clique_method=args.clique_method)
    try:
        cfg.validate(net.node_count)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    bip = models.generate_two_mode(net, cfg)
    if args.format == "csv":
        bipartite.write_incidence(args.output, bip)
    else:
        atomic_write_text(args.output, bipartite.format_coordinate_list(bip))
    agent_deg, group_deg = bipartite.degrees(bip)
    print(f"agents: {bip.agent_count}  groups: {bip.group_count}  memberships: {len(bip.memberships)}")
    for name, deg in (("agent degree", agent_deg), ("group degree", group_deg)):
        if deg.size:
            print(f"{name}: min {deg.min()}  mean {deg.mean():.3f}  max {deg.max()}")
    print(f"wrote {args.output}")


def _cmd_stats(args) -> None:
    seed = _resolve_seed(args.seed)
    bip = bipartite.read_incidence(args.incidence)
    res = evaluation.network_characteristics(bip, args.null_replicates, args.iterations, np.random.default_rng(seed))
    print(f"agent degree skewness: {res['agent_skew']:.4f}")
    print(f"group degree skewness: {res['group_skew']:.4f}")
    print(f"four-cycles: {int(res['four_cycles'])}  null mean: {res['null_mean']:.2f}  ratio: {res['cycle_ratio']:.4f}")


def _cmd_backbone(args) -> None:
    seed = _resolve_seed(args.seed)
    bip = bipartite.read_incidence(args.incidence)
    try:
        bb = evaluation.extract_backbone(bip, args.alpha, args.replicates, np.random.default_rng(seed))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    graph.write_edge_list(args.output, bb)
    print(f"backbone: {bb.node_count} agents, {bb.edge_count} ties; wrote {args.output}")


def _cmd_characteristics(args) -> None:
    seed = _resolve_seed(args.seed)
    os.makedirs(args.output_dir, exist_ok=True)
    kw = dict(seed=seed, clique_method=args.clique_method, outside_prob_mode=args.outside_mode, beta=args.beta)
    if args.replicates is not None:
        kw["replicates"] = args.replicates
    report = evaluation.run_characteristics_experiment(evaluation.CharacteristicsConfig(**kw))
    out = os.path.join(args.output_dir, "characteristics.csv")
    evaluation.write_text(out, report.to_csv())
    evaluation.write_text(os.path.join(args.output_dir, "characteristics_summary.csv"), report.summary_csv())
    evaluation.write_text(os.path.join(args.output_dir, "characteristics_summary.dat"), report.gnuplot_table())
    print(f"{len(report.rows)} cells; wrote {out}")
    for s in report.summary:
        flag = f"  [{s['flag']}]" if s["flag"] else ""
        print(f"{s['model']:<14} p={s['p']:.3f}  agent skew {s['agent_skew_mean']:+.3f}  "
              f"group skew {s['group_skew_mean']:+.3f}  cycle ratio {s['cycle_ratio_mean']:.3f}{flag}")


def _cmd_recovery(args) -> None:
    seed = _resolve_seed(args.seed)
    os.makedirs(args.output_dir, exist_ok=True)
    kw = dict(seed=seed, clique_method=args.clique_method, outside_prob_mode=args.outside_mode)
    if args.replicates is not None:
        kw["backbone_replicates"] = args.replicates
    rows = evaluation.run_recovery_experiment(evaluation.RecoveryConfig(**kw))
    out = os.path.join(args.output_dir, "recovery.csv")
    evaluation.write_text(out, evaluation.format_recovery_csv(rows))
    for r in rows:
        print(f"{r['model']:<14} simple matching {r['simple_matching']:.3f}  "
              f"correlation {r['correlation']:.3f}  jaccard {r['jaccard']:.3f}  isolates {r['isolates']}")
    print(f"wrote {out}")


def _cmd_datasets(args) -> None:
    net = graph.karate_club()
    graph.write_edge_list(args.output, net)
    print(f"karate club: {net.node_count} agents, {net.edge_count} ties; wrote {args.output}")


COMMANDS = {
    "generate": _cmd_generate,
    "stats": _cmd_stats,
    "backbone": _cmd_backbone,
    "experiment-characteristics": _cmd_characteristics,
    "experiment-recovery": _cmd_recovery,
    "datasets": _cmd_datasets,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"bigraph {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"bigraph {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return 0


if __name__ == "__main__":
    sys.exit(main())
