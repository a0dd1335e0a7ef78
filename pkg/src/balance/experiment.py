"""Configuration-driven experiment runner.

One world ensemble per (model, rng_seed, n_worlds) is shared by every
algorithm and budget so the comparison is fair; given the same configuration
and seed, all outputs except wall-clock timings are byte-identical.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass
from pathlib import Path

from . import baselines, selection
from .graph import (
    estimate_probabilities,
    load_edge_list,
    load_interactions,
    load_priors,
)
from .objective import SeedAssignment, estimate_phi
from .synth import load_seeds
from .worlds import MODELS, build_ensemble

ALGORITHMS = ("cover", "common", "hedge", "greedy", "bblo", "union",
              "intersection", "highdegree", "random")
DEFAULT_BUDGETS = tuple(range(5, 55, 5))
CSV_HEADER = ("algorithm", "k", "phi", "symm_diff", "std_err", "wall_time_s")


class ConfigError(ValueError):
    """Invalid experiment configuration."""


@dataclass(frozen=True)
class ExperimentConfig:
    graph_path: str
    seeds_path: str
    model: str
    algorithms: tuple = ALGORITHMS
    budgets: tuple = DEFAULT_BUDGETS
    n_worlds: int = 1000
    rng_seed: int = 0
    alpha: float = 0.8
    output_dir: str = "results"
    interactions_path: str | None = None
    priors_path: str | None = None
    pool_length: int | None = None
    verbose: bool = False

    def __post_init__(self):
        if self.model not in MODELS:
            raise ConfigError(f"unknown model '{self.model}'")
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise ConfigError(f"unknown algorithms: {', '.join(unknown)}")
        if not self.algorithms:
            raise ConfigError("no algorithms selected")
        if not self.budgets or any(b <= 0 for b in self.budgets):
            raise ConfigError("budgets must be positive integers")
        if self.n_worlds < 1:
            raise ConfigError("n_worlds must be >= 1")
        if not (0.0 <= self.alpha <= 1.0):
            raise ConfigError("alpha must be in [0,1]")
        if self.pool_length is not None and self.pool_length < max(self.budgets):
            raise ConfigError("pool_length must be at least the largest budget")


def _parse_int_list(text: str):
    return tuple(int(tok) for tok in text.replace(",", " ").split())


def parse_config_file(path) -> dict:
    """Flat ``key = value`` lines; '#' starts a comment."""
    values: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"config line {lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            values[key.strip()] = value.strip()
    return values


def config_from_mapping(values: dict) -> ExperimentConfig:
    """Build a validated config from string values (file and/or CLI)."""
    try:
        kwargs = {}
        for key in ("graph", "graph_path"):
            if key in values:
                kwargs["graph_path"] = values[key]
        for key in ("seeds", "seeds_path"):
            if key in values:
                kwargs["seeds_path"] = values[key]
        if "model" in values:
            kwargs["model"] = values["model"]
        if "algorithms" in values:
            v = values["algorithms"]
            kwargs["algorithms"] = tuple(
                v.replace(",", " ").split()) if isinstance(v, str) else tuple(v)
        if "budgets" in values:
            v = values["budgets"]
            kwargs["budgets"] = _parse_int_list(v) if isinstance(v, str) else tuple(v)
        for key, cast in (("n_worlds", int), ("rng_seed", int), ("alpha", float),
                          ("pool_length", int)):
            if key in values and values[key] is not None:
                kwargs[key] = cast(values[key])
        if "output_dir" in values:
            kwargs["output_dir"] = values["output_dir"]
        for key in ("interactions", "interactions_path"):
            if key in values:
                kwargs["interactions_path"] = values[key]
        for key in ("priors", "priors_path"):
            if key in values:
                kwargs["priors_path"] = values[key]
        if "verbose" in values:
            v = values["verbose"]
            kwargs["verbose"] = v if isinstance(v, bool) else \
                v.strip().lower() in ("1", "true", "yes", "on")
        missing = [k for k in ("graph_path", "seeds_path", "model") if k not in kwargs]
        if missing:
            raise ConfigError(f"missing required config keys: {', '.join(missing)}")
        return ExperimentConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from None


@dataclass(frozen=True)
class ResultRow:
    algorithm: str
    k: int
    phi: float
    symm_diff: float
    std_err: float
    wall_time_s: float
    s1: tuple
    s2: tuple
    notes: tuple = ()
    trace: tuple = ()


def _run_one(name: str, ens, g, i1, i2, k: int, cfg: ExperimentConfig):
    if name == "cover":
        return selection.run_cover(ens, g, i1, i2, k)
    if name == "common":
        return selection.run_common(ens, g, i1, i2, k)
    if name == "hedge":
        return selection.run_hedge(ens, g, i1, i2, k)
    if name == "greedy":
        return selection.run_greedy_phi(ens, g, i1, i2, k)
    if name == "bblo":
        return baselines.run_bblo(ens, g, i1, i2, k)
    if name == "union":
        return baselines.run_union(ens, g, i1, i2, k, cfg.pool_length)
    if name == "intersection":
        return baselines.run_intersection(ens, g, i1, i2, k, cfg.pool_length)
    if name == "highdegree":
        return baselines.run_high_degree(g, k, ens, i1, i2)
    if name == "random":
        return baselines.run_random(g, k, cfg.rng_seed, ens, i1, i2)
    raise ConfigError(f"unknown algorithm '{name}'")


def run_experiment(cfg: ExperimentConfig):
    """Run every configured algorithm at every budget over one shared
    ensemble; write results.csv, seeds.json, metadata.json and the plot
    series files into cfg.output_dir.  Returns the result rows."""
    g = load_edge_list(cfg.graph_path)
    if cfg.interactions_path or cfg.priors_path:
        if not (cfg.interactions_path and cfg.priors_path):
            raise ConfigError("interactions and priors must be given together")
        interactions = load_interactions(cfg.interactions_path, g)
        priors = load_priors(cfg.priors_path, g)
        g = estimate_probabilities(g, interactions, priors, cfg.alpha)
    i1, i2 = load_seeds(cfg.seeds_path, g)

    ens = build_ensemble(g, cfg.model, cfg.n_worlds, cfg.rng_seed)

    rows = []
    for name in cfg.algorithms:
        for k in cfg.budgets:
            started = time.perf_counter()
            res = _run_one(name, ens, g, i1, i2, k, cfg)
            final = res.final
            if final is None:
                final = estimate_phi(ens, SeedAssignment(i1, i2, res.s1, res.s2, k))
            elapsed = time.perf_counter() - started
            rows.append(ResultRow(
                algorithm=name, k=k,
                phi=final.phi, symm_diff=g.n - final.phi,
                std_err=final.std_err, wall_time_s=elapsed,
                s1=tuple(sorted(g.names[v] for v in res.s1)),
                s2=tuple(sorted(g.names[v] for v in res.s2)),
                notes=res.notes, trace=res.trace,
            ))

    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_csv(out / "results.csv", rows)
    _write_seed_report(out / "seeds.json", rows)
    _write_metadata(out / "metadata.json", cfg, ens, g, rows)
    emit_plot_data(rows, out)
    if cfg.verbose:
        _write_traces(out / "traces.json", rows)
    return rows


def _fmt(x: float) -> str:
    return repr(float(x))


def _write_csv(path, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in rows:
            writer.writerow([r.algorithm, r.k, _fmt(r.phi), _fmt(r.symm_diff),
                             _fmt(r.std_err), f"{r.wall_time_s:.6f}"])


def _write_seed_report(path, rows) -> None:
    report: dict = {}
    for r in rows:
        report.setdefault(r.algorithm, {})[str(r.k)] = {
            "s1": list(r.s1), "s2": list(r.s2),
        }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_metadata(path, cfg, ens, g, rows) -> None:
    notes = sorted({note for r in rows for note in r.notes})
    payload = {
        "graph": {"path": cfg.graph_path, "n": g.n, "m": g.m},
        "model": cfg.model,
        "n_worlds": cfg.n_worlds,
        "rng_seed": cfg.rng_seed,
        "algorithms": list(cfg.algorithms),
        "budgets": list(cfg.budgets),
        "ensemble_hash": ens.content_hash(),
        "notes": notes,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_traces(path, rows) -> None:
    payload = {}
    for r in rows:
        payload.setdefault(r.algorithm, {})[str(r.k)] = [
            {"iteration": t.iteration, "option": t.option,
             "added1": list(t.added1), "added2": list(t.added2),
             "value": t.value, "best_common": t.best_common}
            for t in r.trace
        ]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def emit_plot_data(rows, output_dir) -> list:
    """One two-column (k, symm_diff) file per algorithm, ascending in k."""
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    by_algorithm: dict[str, list] = {}
    for r in rows:
        by_algorithm.setdefault(r.algorithm, []).append((r.k, r.symm_diff))
    written = []
    for name, series in by_algorithm.items():
        path = out / f"series_{name}.tsv"
        with open(path, "w", encoding="utf-8") as fh:
            for k, sd in sorted(series):
                fh.write(f"{k}\t{_fmt(sd)}\n")
        written.append(path)
    return written
