"""Randomly fluctuating phase factor and ensemble averages.

At every step the phase factor fluctuates as ``phi_eps(n) = phi + eps * R_n``
with ``R_n`` uniform on [-1, 1]. How the fluctuation enters the shift phase
is selected by :attr:`NoiseSpec.model`:

``"jitter"`` (default)
    theta_n = phi * n + eps * R_n. The imprinted phase carries a bounded
    per-step error around its ideal value.
``"scaled"``
    theta_n = (phi + eps * R_n) * n, i.e. ``phi_eps(n)`` substituted into the
    shift phase as written. The error grows linearly with ``n``.
``"accumulated"``
    theta_n = sum of phi_eps(m) over the steps taken so far. This is the
    gauge-equivalent form of a static, position-dependent phase kick whose
    strength fluctuates from step to step.

Per-run random streams come from a counter-based generator (Philox) keyed by
``(seed, run_index)``, so each run draws the same numbers regardless of the
order or process it runs in.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .evolution import Trajectory, evolve
from .operators import ProtocolSpec
from .state import WalkerState

NOISE_MODELS = ("jitter", "scaled", "accumulated")
DISTRIBUTIONS = ("uniform",)


@dataclass(frozen=True)
class NoiseSpec:
    epsilon: float
    runs: int = 20
    seed: int = 0
    model: str = "jitter"
    distribution: str = "uniform"

    def __post_init__(self):
        if not 0 <= self.epsilon <= 1:
            raise ValueError(f"epsilon must lie in [0, 1], got {self.epsilon}")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")
        if self.model not in NOISE_MODELS:
            raise ValueError(f"unknown noise model {self.model!r}; choose from {NOISE_MODELS}")
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(f"unknown distribution {self.distribution!r}; choose from {DISTRIBUTIONS}")


@dataclass(eq=False)
class EnsembleResult:
    """Run-averaged observables; series are indexed by step like :class:`Trajectory`."""

    return_probability: np.ndarray
    std_dev: np.ndarray
    mean_position: np.ndarray
    spec: ProtocolSpec
    noise: NoiseSpec
    distributions: np.ndarray | None = None
    run_return_probability: np.ndarray | None = None
    run_std_dev: np.ndarray | None = None

    @property
    def n_steps(self) -> int:
        return len(self.return_probability) - 1

    @property
    def steps(self) -> np.ndarray:
        return np.arange(self.n_steps + 1)

    @property
    def runs(self) -> int:
        return self.noise.runs

    @property
    def seed(self) -> int:
        return self.noise.seed


def fluctuated_phase(phi: float, epsilon: float, rng_draw: float) -> float:
    if not 0 <= epsilon <= 1:
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon}")
    return phi + epsilon * rng_draw


def run_generator(seed: int, run_index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(run_index,))
    return np.random.Generator(np.random.Philox(ss))


def fluctuation_draws(noise: NoiseSpec, run_index: int, n_steps: int) -> np.ndarray:
    """R_1 ... R_n for one run."""
    return run_generator(noise.seed, run_index).uniform(-1.0, 1.0, n_steps)


def noisy_step_phases(spec: ProtocolSpec, noise: NoiseSpec, draws: np.ndarray) -> np.ndarray:
    """Full shift phase theta for each step of one run."""
    n_steps = len(draws)
    indices = spec.step_origin + np.arange(n_steps)
    eps = noise.epsilon
    if noise.model == "jitter":
        ideal = np.array([spec.phase_at(int(n)) for n in indices])
        return ideal + eps * draws
    if noise.model == "scaled":
        return np.array([spec.phase_at(int(n), fluctuated_phase(spec.phi, eps, r)) for n, r in zip(indices, draws)])
    # accumulated: phi * (number of steps so far) + eps * running sum of draws
    steps_taken = np.arange(1, n_steps + 1)
    ideal = np.array([spec.phase_at(int(m)) for m in steps_taken])
    return ideal + eps * np.cumsum(draws)


def _one_run(args):
    initial, spec, noise, n_steps, run_index, record_distributions = args
    draws = fluctuation_draws(noise, run_index, n_steps)
    theta = noisy_step_phases(spec, noise, draws)
    return evolve(initial, spec, n_steps, record_distributions=record_distributions, imprinted_phases=theta)


def run_trajectories(
    initial: WalkerState,
    spec: ProtocolSpec,
    noise: NoiseSpec,
    n_steps: int,
    record_distributions: bool = False,
    workers: int | None = None,
) -> list[Trajectory]:
    """All runs of the ensemble, ordered by run index."""
    jobs = [(initial, spec, noise, n_steps, r, record_distributions) for r in range(noise.runs)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_one_run, jobs))
    return [_one_run(job) for job in jobs]


def run_ensemble(
    initial: WalkerState,
    spec: ProtocolSpec,
    noise: NoiseSpec,
    n_steps: int,
    keep_runs: bool = False,
    record_distributions: bool = False,
    workers: int | None = None,
) -> EnsembleResult:
    """Average return probability, mean and std over ``noise.runs`` noisy runs.

    Results are reduced in run-index order, so the output does not depend on
    ``workers``.
    """
    trajs = run_trajectories(initial, spec, noise, n_steps, record_distributions, workers)
    rp = np.stack([t.return_probability for t in trajs])
    sd = np.stack([t.std_dev for t in trajs])
    mean = np.stack([t.mean_position for t in trajs])
    dists = None
    if record_distributions:
        dists = np.mean(np.stack([t.distributions for t in trajs]), axis=0)
    return EnsembleResult(
        return_probability=rp.mean(axis=0),
        std_dev=sd.mean(axis=0),
        mean_position=mean.mean(axis=0),
        spec=spec,
        noise=noise,
        distributions=dists,
        run_return_probability=rp if keep_runs else None,
        run_std_dev=sd if keep_runs else None,
    )
