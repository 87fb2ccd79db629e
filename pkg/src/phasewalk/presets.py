"""Parameter sets of the published figures.

=========  ==========  ===============  =========  =====  ==================  =======
preset     protocol    phi / 2pi        initial    steps  noise eps           heatmap
=========  ==========  ===============  =========  =====  ==================  =======
fig1a      standard    1/200            symmetric  200    -                   yes
fig1b      standard    1/100            symmetric  200    -                   yes
fig1c      standard    1/49             symmetric  200    -                   yes
fig1d      standard    1/200            up         200    -                   yes
fig1e      standard    1/100            up         200    -                   yes
fig1f      standard    1/49             up         200    -                   yes
fig1g      standard    1/200            symmetric  200    -                   no
fig1h      standard    1/100            symmetric  200    -                   no
fig1i      standard    1/49             symmetric  200    -                   no
fig2       standard    (sqrt(5)-1)/2    symmetric  1000   -                   no
fig3a      splitstep   1/100            symmetric  400    -                   yes
fig3b      splitstep   1/100            symmetric  400    -                   no
fig3c      splitstep   1/49             symmetric  400    -                   yes
fig3d      splitstep   1/49             symmetric  400    -                   no
fig4a      standard    1/49             symmetric  200    1/20, 1/5, 1        no
fig4b      standard    1/49             symmetric  200    1/20, 1/5, 1        no
fig4c      standard    (sqrt(5)-1)/2    symmetric  1000   1/20, 1/5, 1        no
fig4d      standard    (sqrt(5)-1)/2    symmetric  1000   1/20, 1/5, 1        no
=========  ==========  ===============  =========  =====  ==================  =======

Panels a/b (and c/d) of figure 4 plot the return probability and the
standard deviation of the same ensembles, so those presets share parameters.
Noise presets average 20 runs with seed 0.
"""
from __future__ import annotations

from dataclasses import replace

from .config import ConfigError, ExperimentConfig

_NOISE_EPS = (1 / 20, 1 / 5, 1.0)


def _fig1(name, q, initial, heatmap):
    return ExperimentConfig(name=name, phase_ratio=(1, q), initial=initial, steps=200, heatmap=heatmap)


def _fig3(name, q, heatmap):
    return ExperimentConfig(name=name, protocol="splitstep", phase_ratio=(1, q), steps=400, heatmap=heatmap)


PRESETS: dict[str, ExperimentConfig] = {
    "fig1a": _fig1("fig1a", 200, "symmetric", True),
    "fig1b": _fig1("fig1b", 100, "symmetric", True),
    "fig1c": _fig1("fig1c", 49, "symmetric", True),
    "fig1d": _fig1("fig1d", 200, "up", True),
    "fig1e": _fig1("fig1e", 100, "up", True),
    "fig1f": _fig1("fig1f", 49, "up", True),
    "fig1g": _fig1("fig1g", 200, "symmetric", False),
    "fig1h": _fig1("fig1h", 100, "symmetric", False),
    "fig1i": _fig1("fig1i", 49, "symmetric", False),
    "fig2": ExperimentConfig(name="fig2", phase_name="golden", steps=1000),
    "fig3a": _fig3("fig3a", 100, True),
    "fig3b": _fig3("fig3b", 100, False),
    "fig3c": _fig3("fig3c", 49, True),
    "fig3d": _fig3("fig3d", 49, False),
    "fig4a": ExperimentConfig(name="fig4a", phase_ratio=(1, 49), steps=200, noise_eps=_NOISE_EPS),
    "fig4b": ExperimentConfig(name="fig4b", phase_ratio=(1, 49), steps=200, noise_eps=_NOISE_EPS),
    "fig4c": ExperimentConfig(name="fig4c", phase_name="golden", steps=1000, noise_eps=_NOISE_EPS),
    "fig4d": ExperimentConfig(name="fig4d", phase_name="golden", steps=1000, noise_eps=_NOISE_EPS),
}


def get_preset(name: str, **overrides) -> ExperimentConfig:
    try:
        config = PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}") from None
    return replace(config, **overrides) if overrides else config
