"""Drive a state through many walk steps and record observables per step."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import Protocol, ProtocolSpec, _step_block
from .state import Distribution, WalkerState, WindowError, check_normalized


@dataclass(eq=False)
class Trajectory:
    """Per-step observables of one run.

    Every series has ``n_steps + 1`` entries; index ``n`` is the value after
    ``n`` steps and index 0 describes the initial state.
    """

    n_steps: int
    return_probability: np.ndarray
    mean_position: np.ndarray
    std_dev: np.ndarray
    final_state: WalkerState
    spec: ProtocolSpec
    origin_site: int = 0
    distributions: np.ndarray | None = None
    initial_tag: str | None = None
    seed: int | None = None

    def __len__(self) -> int:
        return self.n_steps

    @property
    def steps(self) -> np.ndarray:
        return np.arange(self.n_steps + 1)

    @property
    def window_radius(self) -> int:
        return self.final_state.window_radius

    def distribution(self, n: int) -> Distribution:
        if self.distributions is None:
            raise ValueError("trajectory was evolved without record_distributions=True")
        return Distribution(self.distributions[n], n)

    def config_echo(self) -> dict:
        spec = self.spec
        return {
            "protocol": spec.kind.value,
            "phi": spec.phi,
            "ratio": list(spec.ratio) if spec.ratio else None,
            "step_origin": spec.step_origin,
            "initial": self.initial_tag,
            "seed": self.seed,
            "n_steps": self.n_steps,
        }


def required_radius(initial: WalkerState, n_steps: int) -> int:
    """Smallest window radius that keeps ``n_steps`` of spreading off the edges."""
    support = initial.support()
    if support is None:
        return n_steps + 1
    return max(-support[0], support[1]) + n_steps + 1


def _step_phases(spec, n_steps, phase_sequence, imprinted_phases) -> np.ndarray:
    indices = spec.step_origin + np.arange(n_steps)
    if phase_sequence is not None and imprinted_phases is not None:
        raise ValueError("pass phase_sequence or imprinted_phases, not both")
    if imprinted_phases is not None:
        theta = np.asarray(imprinted_phases, dtype=float)
        if theta.shape != (n_steps,):
            raise ValueError(f"imprinted_phases has length {theta.size}, expected {n_steps}")
        return theta
    if phase_sequence is not None:
        phis = np.asarray(phase_sequence, dtype=float)
        if phis.shape != (n_steps,):
            raise ValueError(f"phase_sequence has length {phis.size}, expected {n_steps}")
        return np.array([spec.phase_at(int(n), float(f)) for n, f in zip(indices, phis)])
    return np.array([spec.phase_at(int(n)) for n in indices])


def evolve(
    initial: WalkerState,
    spec: ProtocolSpec,
    n_steps: int,
    record_distributions: bool = False,
    phase_sequence=None,
    imprinted_phases=None,
    origin_site: int = 0,
    initial_tag: str | None = None,
    seed: int | None = None,
) -> Trajectory:
    """Apply steps ``step_origin, ..., step_origin + n_steps - 1`` to ``initial``.

    ``phase_sequence[k]`` replaces phi for the k-th step (it is multiplied by
    that step's index); ``imprinted_phases[k]`` gives the full shift phase of
    the k-th step directly. The initial state is not modified.
    """
    if n_steps < 0:
        raise ValueError("n_steps must be >= 0")
    check_normalized(initial)
    radius = initial.window_radius
    need = required_radius(initial, n_steps)
    if radius < need:
        raise WindowError(f"window radius {radius} too small for {n_steps} steps; need >= {need}")
    if not -radius <= origin_site <= radius:
        raise WindowError(f"origin site {origin_site} outside the window")
    theta = _step_phases(spec, n_steps, phase_sequence, imprinted_phases)

    state = initial.copy()
    amps = state.amplitudes
    width = amps.shape[1]
    x = np.arange(-radius, radius + 1, dtype=float)
    origin_col = origin_site + radius
    coins = tuple(c.matrix for c in spec.coins)
    kind = Protocol(spec.kind)

    rp = np.empty(n_steps + 1)
    mean = np.empty(n_steps + 1)
    sd = np.empty(n_steps + 1)
    dists = np.zeros((n_steps + 1, width)) if record_distributions else None

    support = initial.support()
    lo, hi = (radius, radius) if support is None else (support[0] + radius, support[1] + radius)

    def record(k, lo, hi):
        block = amps[:, lo:hi + 1]
        p = (block.real ** 2 + block.imag ** 2).sum(axis=0)
        xs = x[lo:hi + 1]
        m1 = float(xs @ p)
        m2 = float((xs * xs) @ p)
        mean[k] = m1
        sd[k] = np.sqrt(max(m2 - m1 * m1, 0.0))
        rp[k] = p[origin_col - lo] if lo <= origin_col <= hi else 0.0
        if dists is not None:
            dists[k, lo:hi + 1] = p

    record(0, lo, hi)
    for k in range(n_steps):
        # support grows by at most one site per side per step
        lo, hi = lo - 1, hi + 1
        _step_block(amps[:, lo:hi + 1], kind, coins, theta[k])
        record(k + 1, lo, hi)

    return Trajectory(
        n_steps=n_steps,
        return_probability=rp,
        mean_position=mean,
        std_dev=sd,
        final_state=state,
        spec=spec,
        origin_site=origin_site,
        distributions=dists,
        initial_tag=initial_tag,
        seed=seed,
    )


def max_excursion(traj: Trajectory) -> float:
    """Largest standard deviation reached along the trajectory."""
    if len(traj.std_dev) == 0:
        raise ValueError("empty trajectory")
    return float(np.max(traj.std_dev))
