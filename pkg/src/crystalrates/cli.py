"""Config-driven experiment runner for the rate-region and learning tools.

Subcommands (all take ``--config`` pointing at a JSON experiment file and
write plot-ready artifacts under ``--out``):

* ``corners``      dump every on/off corner point as CSV
* ``region``       sample both 2-user frontiers, label curvature, build the hull
* ``area-sweep``   sweep symmetric interference and compare region areas
* ``learn``        run regret matching over a seed ensemble
* ``ce-check``     test a joint distribution file for equilibrium membership
* ``vcg-table``    dump the utility table as CSV

Exit codes: 0 success, 2 config error, 3 capacity error (too many users),
4 equilibrium check violated.  All floats are written with full round-trip
precision and runs are deterministic given the config, so repeated
invocations produce byte-identical artifacts.

Users are numbered from 1 in artifact column names (bit1, r1, p1, ...);
profile and corner indices use the user-1-as-least-significant-bit code.
dB values in configs are power ratios: linear = 10**(dB / 10).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .channel import ChannelGains
from .game import (build_utility_table, is_correlated_equilibrium, pure_nash,
                   theta_from_distribution)
from .learning import LearningConfig, run
from .region import (CapacityError, area_power_control, area_timeshare_both_on,
                     area_timeshare_exclusive, classify_frontier, convex_hull,
                     enumerate_corners, sample_frontier, theta_support)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CAPACITY = 3
EXIT_VIOLATED = 4

DEFAULT_GRID = 1024


def db_to_linear(db: float) -> float:
    """Power-ratio dB conversion."""
    return 10.0 ** (db / 10.0)


def _fmt(value) -> str:
    """Shortest round-trip decimal form of a float."""
    return repr(float(value))


def load_config(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError("config must be a JSON object")
    return cfg


def gains_from_config(cfg: dict) -> ChannelGains:
    block = cfg.get("gains")
    if not isinstance(block, dict):
        raise ValueError("config needs a 'gains' object")
    p_max = float(block.get("p_max", 1.0))
    if "matrix" in block:
        return ChannelGains(np.asarray(block["matrix"], dtype=float), p_max)
    if all(key in block for key in ("a", "b", "c", "d")):
        return ChannelGains.two_user(float(block["a"]), float(block["b"]),
                                     float(block["c"]), float(block["d"]), p_max)
    raise ValueError("gains must provide either 'matrix' or the scalars a, b, c, d")


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _write_json(path: Path, payload) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_corners(cfg: dict, out: Path, grid: int) -> int:
    gains = gains_from_config(cfg)
    corners = enumerate_corners(gains)
    n = corners.n
    header = (["index"] + [f"bit{i + 1}" for i in range(n)]
              + [f"r{i + 1}" for i in range(n)])
    rows = [[k] + [int(b) for b in bits] + [_fmt(r) for r in rate]
            for k, bits, rate in zip(corners.indices, corners.bits, corners.rates)]
    _write_csv(out / "corners.csv", header, rows)
    print(f"wrote {len(rows)} corners to {out / 'corners.csv'}")
    return EXIT_OK


def cmd_region(cfg: dict, out: Path, grid: int) -> int:
    gains = gains_from_config(cfg)
    if gains.n != 2:
        raise ValueError("the region subcommand samples frontiers for 2 users only")
    corners = enumerate_corners(gains)
    rows = []
    curvature = {}
    for fixed in (0, 1):
        sample = sample_frontier(gains, fixed_user=fixed, grid=grid)
        curvature[f"pinned_user{fixed + 1}"] = classify_frontier(sample)
        swept = sample.swept_user
        for powers, rate in zip(sample.powers, sample.rates):
            rows.append([fixed + 1, _fmt(powers[swept]),
                         _fmt(powers[0]), _fmt(powers[1]),
                         _fmt(rate[0]), _fmt(rate[1])])
    _write_csv(out / "frontiers.csv",
               ["pinned_user", "sweep_power", "p1", "p2", "r1", "r2"], rows)
    chain = convex_hull(corners.rates)
    hull = {
        "frontier_chain": [int(i) for i in chain],
        "frontier_vertices": [[0.0, 0.0]] + corners.rates.tolist(),
        "corner_indices": [int(i) for i in corners.indices],
        "curvature": curvature,
    }
    _write_json(out / "hull.json", hull)
    print(f"curvature: {curvature}; hull chain {chain}")
    return EXIT_OK


def cmd_area_sweep(cfg: dict, out: Path, grid: int) -> int:
    gains = gains_from_config(cfg)
    if gains.n != 2:
        raise ValueError("area sweeps are 2-user only")
    g = gains.gains
    if g[0, 0] != g[1, 1]:
        raise ValueError("area sweeps vary the two cross gains together and need a "
                         "symmetric channel (equal direct gains); set explicit b, d "
                         "configs per point instead")
    sweep = cfg.get("sweep")
    if not isinstance(sweep, dict):
        raise ValueError("config needs a 'sweep' object with db_start, db_stop, steps")
    steps = int(sweep.get("steps", 41))
    if steps < 2:
        raise ValueError("sweep needs at least 2 steps")
    db_values = np.linspace(float(sweep["db_start"]), float(sweep["db_stop"]), steps)
    rows = []
    for db in db_values:
        cross = db_to_linear(float(db))
        point = ChannelGains.two_user(g[0, 0], cross, g[1, 1], cross, gains.p_max)
        pc = area_power_control(point, grid)
        both = area_timeshare_both_on(point)
        exclusive = area_timeshare_exclusive(point)
        gain_pct = 100.0 * (both - pc) / pc
        rows.append([_fmt(db), _fmt(cross), _fmt(pc), _fmt(both),
                     _fmt(exclusive), _fmt(gain_pct)])
    _write_csv(out / "area_sweep.csv",
               ["b_db", "b_linear", "area_power_control", "area_timeshare_both_on",
                "area_timeshare_exclusive", "gain_percent"], rows)
    print(f"wrote {len(rows)} sweep points to {out / 'area_sweep.csv'}")
    return EXIT_OK


def _learning_block(cfg: dict) -> dict:
    block = cfg.get("learning")
    if not isinstance(block, dict):
        raise ValueError("config needs a 'learning' object")
    return block


def cmd_learn(cfg: dict, out: Path, grid: int, seeds_override=None) -> int:
    gains = gains_from_config(cfg)
    mechanism = cfg.get("mechanism", "vcg")
    block = _learning_block(cfg)
    seeds = seeds_override if seeds_override is not None else block.get("seeds")
    if not seeds:
        raise ValueError("learning needs a non-empty seed list")
    t_max = int(block.get("t_max", 100000))
    ce_eps = float(block.get("ce_eps", 0.05))
    theta_eps = float(block.get("theta_eps", 0.05))
    window = block.get("window")
    mu = block.get("mu")
    initial_p = block.get("initial_p", 0.5)

    per_seed = []
    thetas = []
    for seed in seeds:
        config = LearningConfig(t_max=t_max, seed=int(seed), mu=mu,
                                window=window, initial_p=initial_p)
        trajectory = run(gains, mechanism, config, ce_eps=ce_eps)
        n = trajectory.n
        header = (["t"] + [f"bit{i + 1}" for i in range(n)]
                  + [f"u{i + 1}" for i in range(n)]
                  + [f"p{i + 1}" for i in range(n)])
        rows = ([t + 1]
                + [int(b) for b in trajectory.actions[t]]
                + [_fmt(x) for x in trajectory.utilities[t]]
                + [_fmt(x) for x in trajectory.probs_on[t]]
                for t in range(t_max))
        _write_csv(out / f"learn_seed{int(seed)}.csv", header, rows)
        try:
            theta = theta_from_distribution(trajectory.empirical_pmf, eps=theta_eps)
        except ValueError:
            theta = None
        if theta is not None:
            thetas.append(theta)
        per_seed.append({
            "seed": int(seed),
            "theta": None if theta is None else [float(x) for x in theta],
            "theta_support": None if theta is None else [int(i) + 1 for i in theta_support(theta, tol=1e-6)],
            "empirical_pmf": [float(x) for x in trajectory.empirical_pmf],
            "ce_holds": bool(trajectory.ce.holds),
            "ce_min_slack": float(trajectory.ce.min_slack),
            "max_avg_regret": trajectory.max_avg_regret,
            "mu": float(trajectory.mu),
            "window": int(trajectory.window),
        })

    table = build_utility_table(gains, mechanism)
    complete = len(thetas) == len(seeds)
    summary = {
        "mechanism": mechanism,
        "t_max": t_max,
        "seeds": [int(s) for s in seeds],
        "ce_eps": ce_eps,
        "theta": [float(x) for x in np.mean(thetas, axis=0)] if complete else None,
        "theta_std": [float(x) for x in np.std(thetas, axis=0)] if complete else None,
        "ce_residual": min(entry["ce_min_slack"] for entry in per_seed),
        "ce_holds_all": all(entry["ce_holds"] for entry in per_seed),
        "avg_regret": float(np.mean([entry["max_avg_regret"] for entry in per_seed])),
        "nash_profiles": [int(k) for k in pure_nash(table)],
        "per_seed": per_seed,
    }
    _write_json(out / "learn_summary.json", summary)
    label = summary["theta"] if complete else "unavailable (silence mass too large)"
    print(f"learned mean time shares over {len(seeds)} seeds: {label}")
    return EXIT_OK


def _read_pmf(path) -> np.ndarray:
    text = Path(path).read_text(encoding="utf-8").strip()
    if not text:
        raise ValueError(f"empty distribution file {path}")
    if text.startswith("["):
        values = json.loads(text)
    else:
        values = [float(tok) for tok in text.replace(",", " ").split()]
    return np.asarray(values, dtype=float)


def cmd_ce_check(cfg: dict, out: Path, grid: int, pmf_path=None) -> int:
    if pmf_path is None:
        pmf_path = cfg.get("pmf")
    if pmf_path is None:
        raise ValueError("ce-check needs --pmf or a 'pmf' config entry")
    gains = gains_from_config(cfg)
    mechanism = cfg.get("mechanism", "vcg")
    eps = float(cfg.get("ce_eps", 1e-9))
    table = build_utility_table(gains, mechanism)
    pmf = _read_pmf(pmf_path)
    verdict = is_correlated_equilibrium(table, pmf, eps=eps)
    payload = {
        "holds": bool(verdict.holds),
        "min_slack": float(verdict.min_slack),
        "eps": eps,
        "mechanism": mechanism,
        "witness": None if verdict.witness is None else {
            "user": int(verdict.witness[0]) + 1,
            "recommended": int(verdict.witness[1]),
            "deviation": int(verdict.witness[2]),
            "residual": float(verdict.witness[3]),
        },
    }
    _write_json(out / "ce_check.json", payload)
    if verdict.holds:
        print(f"holds (min slack {verdict.min_slack!r})")
        return EXIT_OK
    w = payload["witness"]
    print(f"violated: user {w['user']} recommended {w['recommended']} prefers "
          f"{w['deviation']} (residual {w['residual']!r})")
    return EXIT_VIOLATED


def cmd_vcg_table(cfg: dict, out: Path, grid: int) -> int:
    gains = gains_from_config(cfg)
    mechanism = cfg.get("mechanism", "vcg")
    table = build_utility_table(gains, mechanism)
    n = table.n
    header = (["index"] + [f"bit{i + 1}" for i in range(n)]
              + [f"u{i + 1}" for i in range(n)])
    rows = [[k] + [int(b) for b in bits] + [_fmt(x) for x in util]
            for k, bits, util in table.rows()]
    _write_csv(out / "utility_table.csv", header, rows)
    print(f"wrote {len(rows)} {mechanism} profiles to {out / 'utility_table.csv'}")
    return EXIT_OK


def _parse_seeds(text: str) -> list[int]:
    return [int(tok) for tok in text.replace(",", " ").split()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crystalrates",
        description="Rate-region, equilibrium and learning experiments for the "
                    "n-user interference channel.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
            ("corners", "dump the on/off corner points"),
            ("region", "sample 2-user frontiers, classify curvature, build the hull"),
            ("area-sweep", "compare region areas over a symmetric interference sweep"),
            ("learn", "run regret matching over a seed ensemble"),
            ("ce-check", "check a distribution file for equilibrium membership"),
            ("vcg-table", "dump the per-profile utility table")]:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--config", required=True, help="JSON experiment config")
        sp.add_argument("--out", default="out", help="artifact directory (default: out)")
        sp.add_argument("--grid", type=int, default=None,
                        help="frontier/integration grid override")
        if name == "learn":
            sp.add_argument("--seeds", type=_parse_seeds, default=None,
                            help="comma separated seed list override")
        if name == "ce-check":
            sp.add_argument("--pmf", default=None,
                            help="file with 2**n probabilities (JSON array or whitespace floats)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        grid = args.grid if args.grid is not None else int(cfg.get("grid", DEFAULT_GRID))
        if args.command == "corners":
            return cmd_corners(cfg, out, grid)
        if args.command == "region":
            return cmd_region(cfg, out, grid)
        if args.command == "area-sweep":
            return cmd_area_sweep(cfg, out, grid)
        if args.command == "learn":
            return cmd_learn(cfg, out, grid, seeds_override=args.seeds)
        if args.command == "ce-check":
            return cmd_ce_check(cfg, out, grid, pmf_path=args.pmf)
        if args.command == "vcg-table":
            return cmd_vcg_table(cfg, out, grid)
        raise ValueError(f"unknown command {args.command}")
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ValueError, KeyError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
