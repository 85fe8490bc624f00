"""Command-line front end for the experiment runner.

Config files are flat ``key = value`` lines with ``#`` comments; every key
is optional and falls back to the experiment's documented default.  Flags
override config values.  Exit codes: 0 success, 2 unknown experiment or
invalid parameters, 3 runtime numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import fields, replace

from .experiments import ExperimentConfig, list_experiments, run

_INT_KEYS = {"trials", "master_seed", "steps", "record_every", "n_big", "m_t", "threads"}
_FLOAT_KEYS = {"alpha", "s", "b", "t", "dt", "t_final", "s_meas", "eps", "window_t"}
_STR_KEYS = {"experiment", "mode", "out_dir"}
_LADDER_KEYS = {"n_ladder"}
_ALL_KEYS = _INT_KEYS | _FLOAT_KEYS | _STR_KEYS | _LADDER_KEYS


def parse_config_file(path: str) -> dict:
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
            key, _, val = line.partition("=")
            key, val = key.strip(), val.strip()
            if key not in _ALL_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            if key in _INT_KEYS:
                values[key] = int(val)
            elif key in _FLOAT_KEYS:
                values[key] = float(val)
            elif key in _LADDER_KEYS:
                values[key] = tuple(int(x) for x in val.replace(",", " ").split())
            else:
                values[key] = val
    return values


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="smoothlab",
        description="Run a registered random-data dispersive-PDE experiment.",
    )
    p.add_argument("--config", metavar="PATH", help="flat key = value config file")
    p.add_argument("--experiment", metavar="NAME", help="experiment name (overrides config)")
    p.add_argument("--seed", type=int, metavar="U64", help="master seed")
    p.add_argument("--trials", type=int, metavar="K", help="Monte Carlo trials per rung")
    p.add_argument("--out-dir", metavar="PATH", help="output directory for CSV/JSON")
    p.add_argument("--threads", type=int, metavar="K", help="worker pool size")
    p.add_argument("--list", action="store_true", help="list registered experiments")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.list:
        for name, desc in list_experiments():
            print(f"{name}: {desc}")
        return 0
    try:
        values = parse_config_file(args.config) if args.config else {}
        if args.experiment:
            values["experiment"] = args.experiment
        if args.seed is not None:
            values["master_seed"] = args.seed
        if args.trials is not None:
            values["trials"] = args.trials
        if args.out_dir is not None:
            values["out_dir"] = args.out_dir
        if args.threads is not None:
            values["threads"] = args.threads
        known = {f.name for f in fields(ExperimentConfig)}
        cfg = replace(ExperimentConfig(), **{k: v for k, v in values.items() if k in known})
        if not cfg.experiment:
            print("error: no experiment named (use --experiment or a config file)",
                  file=sys.stderr)
            return 2
        summary = run(cfg)
    except (KeyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RuntimeError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    for r in summary.rungs:
        print(
            f"rung {r.rung_index} (n = {r.n_value}): mean = {r.mean:.6g} "
            f"+/- {r.std_error:.2g} over {r.trials} trial(s)"
        )
    if summary.fit is not None:
        print(f"fit [{summary.fit.kind}]: slope = {summary.fit.slope:.6g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
