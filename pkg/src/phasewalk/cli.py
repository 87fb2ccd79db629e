"""Command-line entry point.

Examples::

    phasewalk --preset fig1a --out results/
    phasewalk --phase-ratio 1/49 --steps 200 --heatmap --out results/
    phasewalk --phase golden --steps 1000 --noise-eps 1/20,1 --runs 20 --seed 3
    phasewalk --config run.cfg --steps 400

Settings are resolved in the order defaults, preset, config file, flags;
later sources win.
"""
from __future__ import annotations

import argparse
import logging
import sys
import warnings

from .config import ConfigError, ExperimentConfig, apply_settings, read_config_file
from .experiment import run_experiment
from .presets import PRESETS, get_preset


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="phasewalk",
        description="1D discrete-time quantum walks with a time- and spin-dependent phase shift.",
        argument_default=argparse.SUPPRESS,
    )
    p.add_argument("--preset", metavar="NAME", help=f"figure preset: {', '.join(PRESETS)}")
    p.add_argument("--config", metavar="FILE", help="flat key = value config file")
    p.add_argument("--name", help="prefix of output file names")
    p.add_argument("--protocol", choices=["standard", "splitstep"])
    p.add_argument("--phase-ratio", metavar="P/Q", help="phase factor phi/2pi = P/Q")
    p.add_argument("--phase", metavar="RADIANS|golden", help="phi in radians, or 'golden'")
    p.add_argument("--initial", choices=["symmetric", "up"])
    p.add_argument("--steps", type=int, metavar="N")
    p.add_argument("--noise-eps", metavar="E[,E...]", help="fluctuation strength(s), e.g. 1/20,1/5,1")
    p.add_argument("--noise-model", choices=["jitter", "scaled", "accumulated"])
    p.add_argument("--runs", type=int, metavar="R")
    p.add_argument("--seed", type=int, metavar="S")
    p.add_argument("--out", metavar="DIR")
    p.add_argument("--heatmap", action="store_true", help="write P(x, n) as CSV and PGM")
    p.add_argument("--record-dist", action="store_true", help="write P(x, n) in long CSV format")
    p.add_argument("--complete-tol", type=float)
    p.add_argument("--partial-threshold", type=float)
    p.add_argument("--min-separation", type=int)
    p.add_argument("--step-origin", type=int)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def parse_config(argv=None) -> ExperimentConfig:
    """Resolve flags (and an optional config file / preset) into a config."""
    args = vars(build_parser().parse_args(argv))
    args.pop("verbose", None)
    file_settings = read_config_file(args["config"]) if "config" in args else {}
    preset = args.get("preset", file_settings.get("preset"))
    config = get_preset(preset) if preset else ExperimentConfig()
    config = apply_settings(config, file_settings)
    config = apply_settings(config, args)
    return config.validate()


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    verbose = "-v" in argv or "--verbose" in argv
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = lambda msg, *a, **k: print(f"warning: {msg}", file=sys.stderr)
            config = parse_config(argv)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        result = run_experiment(config)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 1
    for path in result.files:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
