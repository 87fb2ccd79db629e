"""Run a configured experiment and write its output files."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .config import ExperimentConfig, config_to_mapping
from .evolution import evolve
from .noise import run_ensemble
from .observables import min_return_probability, parity_stride, revival_report
from .output import (
    write_distribution_csv,
    write_heatmap_csv,
    write_heatmap_pgm,
    write_json,
    write_timeseries_csv,
)
from .state import make_initial

log = logging.getLogger(__name__)


@dataclass
class ExperimentResult:
    summary: dict
    files: list[Path] = field(default_factory=list)


def _unit_summary(name, result, config, stride, noise=None) -> dict:
    report = revival_report(
        result,
        complete_tol=config.complete_tol,
        partial_threshold=config.partial_threshold,
        min_separation=config.min_separation,
        stride=stride,
    )
    sd = result.std_dev
    return {
        "name": name,
        "revivals": report.to_dict(),
        "max_excursion": float(np.max(sd)),
        "max_std_dev": float(np.max(sd)),
        "final_std_dev": float(sd[-1]),
        "min_return_probability": min_return_probability(result.return_probability, stride),
        "noise": None if noise is None else {
            "epsilon": noise.epsilon,
            "runs": noise.runs,
            "seed": noise.seed,
            "model": noise.model,
        },
    }


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Evolve (or ensemble-average) the configured walk and write its outputs.

    Writes ``<name>[_eps<E>]_timeseries.csv`` per run unit, heatmap CSV/PGM
    when ``config.heatmap`` is set, a long-format distribution CSV when
    ``config.record_dist`` is set, and ``<name>_summary.json``.
    """
    config.validate()
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    spec = config.protocol_spec()
    initial = make_initial(config.initial, config.steps + 1)
    stride = parity_stride(spec.kind)
    want_dists = config.heatmap or config.record_dist

    units = []
    noise_specs = config.noise_specs()
    if not noise_specs:
        traj = evolve(
            initial, spec, config.steps,
            record_distributions=want_dists, initial_tag=config.initial,
        )
        units.append((config.name, traj, None))
    for noise in noise_specs:
        log.info("ensemble eps=%g runs=%d seed=%d", noise.epsilon, noise.runs, noise.seed)
        ens = run_ensemble(initial, spec, noise, config.steps, record_distributions=want_dists)
        units.append((f"{config.name}_eps{noise.epsilon:g}", ens, noise))

    files = []
    results = []
    for name, result, noise in units:
        files.append(write_timeseries_csv(
            out / f"{name}_timeseries.csv",
            result.return_probability, result.mean_position, result.std_dev,
        ))
        if config.heatmap:
            files.append(write_heatmap_csv(out / f"{name}_heatmap.csv", result.distributions, config.steps))
            files.append(write_heatmap_pgm(out / f"{name}_heatmap.pgm", result.distributions, config.steps))
        if config.record_dist:
            files.append(write_distribution_csv(out / f"{name}_distribution.csv", result.distributions, config.steps))
        results.append(_unit_summary(name, result, config, stride, noise))

    summary = {
        "phasewalk_version": __version__,
        "config": config_to_mapping(config),
        "phase_radians": spec.phi,
        "phase_over_2pi": spec.phase_factor,
        "seed": config.seed,
        "results": results,
    }
    if len(results) == 1:
        summary.update({k: v for k, v in results[0].items() if k != "name"})
    summary_path = out / f"{config.name}_summary.json"
    summary["files"] = [p.name for p in files] + [summary_path.name]
    files.append(write_json(summary_path, summary))
    return ExperimentResult(summary, files)
