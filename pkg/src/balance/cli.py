"""Command-line entry point.

Subcommands: ``run`` (experiment from a config file plus overrides),
``estimate-probs`` (edge probabilities from interaction counts and priors),
``oracle sweep`` (randomized exact property checks) and ``synth``
(synthetic graph/seeds generation).

Exit codes: 0 success, 2 configuration error, 3 input-data error,
4 oracle property violation.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .experiment import (
    ConfigError,
    config_from_mapping,
    parse_config_file,
    run_experiment,
)
from .graph import (
    EdgeListError,
    estimate_probabilities,
    load_edge_list,
    load_interactions,
    load_priors,
    make_graph,
    write_edge_list,
)
from .oracle import (
    check_cover_ratio,
    check_hedge_common_ratio,
    check_halving_lemma,
    load_set_cover,
    zero_imbalance_matches_coverability,
)
from .synth import generate_synthetic
from .worlds import ModelError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_ORACLE = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="balance",
        description="Seed selection balancing the exposure of two campaigns.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a configured experiment")
    run.add_argument("--config", required=True)
    run.add_argument("--model", choices=("heterogeneous", "correlated"))
    run.add_argument("--budgets", help="comma or space separated budgets")
    run.add_argument("--rng-seed", type=int)
    run.add_argument("--n-worlds", type=int)
    run.add_argument("--algorithms", help="comma separated algorithm names")
    run.add_argument("--output-dir")
    run.add_argument("--verbose", action="store_true", default=None)

    est = sub.add_parser("estimate-probs",
                         help="estimate edge probabilities from counts and priors")
    est.add_argument("--graph", required=True, help="topology edge list")
    est.add_argument("--interactions", required=True)
    est.add_argument("--priors", required=True)
    est.add_argument("--alpha", type=float, required=True)
    est.add_argument("--out", required=True)

    oracle = sub.add_parser("oracle", help="exact property checks")
    oracle_sub = oracle.add_subparsers(dest="oracle_command", required=True)
    sweep = oracle_sub.add_parser("sweep", help="randomized property sweep")
    sweep.add_argument("--instances", type=int, default=10)
    sweep.add_argument("--rng-seed", type=int, default=0)
    sweep.add_argument("--set-cover", help="also check a set-cover instance file")

    synth = sub.add_parser("synth", help="generate synthetic inputs")
    synth.add_argument("--kind", required=True,
                       choices=("two-community", "random-dag", "set-cover-reduction"))
    synth.add_argument("--out-graph", required=True)
    synth.add_argument("--out-seeds", required=True)
    synth.add_argument("--n", type=int)
    synth.add_argument("--m", type=int)
    synth.add_argument("--rng-seed", type=int, default=0)
    synth.add_argument("--intra-degree", type=int, default=5)
    synth.add_argument("--cross-rate", type=float, default=0.1)
    synth.add_argument("--p-intra", type=float, default=0.1)
    synth.add_argument("--p-cross", type=float, default=0.05)
    synth.add_argument("--n-initial", type=int, default=10)
    synth.add_argument("--instance", help="set-cover instance file")
    return parser


def _cmd_run(args) -> int:
    values = parse_config_file(args.config)
    overrides = {
        "model": args.model,
        "budgets": args.budgets,
        "rng_seed": args.rng_seed,
        "n_worlds": args.n_worlds,
        "algorithms": args.algorithms,
        "output_dir": args.output_dir,
        "verbose": args.verbose,
    }
    for key, value in overrides.items():
        if value is not None:
            values[key] = value
    cfg = config_from_mapping(values)
    rows = run_experiment(cfg)
    print(f"wrote {len(rows)} result rows to {cfg.output_dir}")
    return EXIT_OK


def _cmd_estimate_probs(args) -> int:
    g = load_edge_list(args.graph)
    interactions = load_interactions(args.interactions, g)
    priors = load_priors(args.priors, g)
    out = estimate_probabilities(g, interactions, priors, args.alpha)
    write_edge_list(out, args.out)
    print(f"wrote {out.m} estimated edges to {args.out}")
    return EXIT_OK


def _random_sweep_instance(rng: np.random.Generator):
    n = int(rng.integers(3, 7))
    max_edges = n * (n - 1)
    m = int(rng.integers(2, min(8, max_edges) + 1))
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    idx = rng.choice(len(pairs), size=m, replace=False)
    edges = []
    for e in sorted(int(i) for i in idx):
        i, j = pairs[e]
        p = round(float(rng.uniform(0.2, 0.9)), 2)
        edges.append((i, j, p, p))
    g = make_graph(edges, names=[str(i) for i in range(n)])
    i1 = {int(v) for v in rng.choice(n, size=int(rng.integers(1, 3)), replace=False)}
    i2 = {int(v) for v in rng.choice(n, size=int(rng.integers(1, 3)), replace=False)}
    return g, frozenset(i1), frozenset(i2)


def _cmd_oracle_sweep(args) -> int:
    rng = np.random.default_rng(args.rng_seed)
    failures = []
    for idx in range(args.instances):
        g, i1, i2, = _random_sweep_instance(rng)
        k_even = int(rng.choice((2, 4)))
        if not check_cover_ratio(g, "correlated", i1, i2, k_even):
            failures.append(f"instance {idx}: cover ratio violated")
        if not check_hedge_common_ratio(g, i1, i2, k_even):
            failures.append(f"instance {idx}: hedge/common ratio violated")
        s1 = frozenset(int(v) for v in rng.choice(g.n, size=1, replace=False))
        s2 = frozenset(int(v) for v in rng.choice(g.n, size=1, replace=False))
        if s1 != s2 or len(s1) + len(s2) == 2:
            if not check_halving_lemma(g, i1, i2, s1, s2):
                failures.append(f"instance {idx}: halving property violated")
    if args.set_cover:
        inst = load_set_cover(args.set_cover)
        if not zero_imbalance_matches_coverability(inst):
            failures.append("set-cover reduction equivalence violated")
    if failures:
        for line in failures:
            print(f"FAIL {line}", file=sys.stderr)
        return EXIT_ORACLE
    print(f"oracle sweep: {args.instances} instances, all properties hold")
    return EXIT_OK


def _cmd_synth(args) -> int:
    params: dict = {"rng_seed": args.rng_seed}
    if args.kind == "two-community":
        if args.n is None:
            raise ConfigError("--n is required for two-community")
        params.update(n=args.n, intra_degree=args.intra_degree,
                      cross_rate=args.cross_rate, p_intra=args.p_intra,
                      p_cross=args.p_cross, n_initial=args.n_initial)
    elif args.kind == "random-dag":
        if args.n is None or args.m is None:
            raise ConfigError("--n and --m are required for random-dag")
        params.update(n=args.n, m=args.m)
    else:
        if not args.instance:
            raise ConfigError("--instance is required for set-cover-reduction")
        params = {"instance": load_set_cover(args.instance)}
    g, _i1, _i2 = generate_synthetic(args.kind, args.out_graph, args.out_seeds,
                                     **params)
    print(f"wrote graph with {g.n} vertices / {g.m} edges to {args.out_graph}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "estimate-probs":
            return _cmd_estimate_probs(args)
        if args.command == "oracle":
            return _cmd_oracle_sweep(args)
        if args.command == "synth":
            return _cmd_synth(args)
        raise ConfigError(f"unknown command {args.command}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (EdgeListError, ModelError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
