"""Walker state on a bounded 1D lattice window.

Amplitudes are stored densely as a ``(2, 2R + 1)`` complex array: row 0 is
spin up, row 1 is spin down, and column ``j`` is lattice site ``x = j - R``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

UP = 0
DOWN = 1

CONSTRUCTOR_TOL = 1e-12
NORMALIZED_TOL = 1e-6


class WindowError(ValueError):
    """Raised when a lattice window is too small or two windows disagree."""


class BoundaryOverflowError(WindowError):
    """Raised when a shift would move amplitude past the window edge."""


@dataclass(eq=False)
class WalkerState:
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 2 or amps.shape[0] != 2 or amps.shape[1] % 2 != 1:
            raise ValueError(f"amplitudes must have shape (2, 2R+1), got {amps.shape}")
        self.amplitudes = amps

    @property
    def window_radius(self) -> int:
        return (self.amplitudes.shape[1] - 1) // 2

    @property
    def sites(self) -> np.ndarray:
        r = self.window_radius
        return np.arange(-r, r + 1)

    def index(self, x: int) -> int:
        r = self.window_radius
        if not -r <= x <= r:
            raise WindowError(f"site {x} outside window [-{r}, {r}]")
        return x + r

    def amplitude(self, spin: int, x: int) -> complex:
        return complex(self.amplitudes[spin, self.index(x)])

    def set_amplitude(self, spin: int, x: int, value: complex) -> None:
        self.amplitudes[spin, self.index(x)] = value

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amplitudes, self.amplitudes).real))

    def normalize(self) -> WalkerState:
        n = self.norm()
        if n == 0:
            raise ValueError("cannot normalize the zero state")
        self.amplitudes /= n
        return self

    def copy(self) -> WalkerState:
        return WalkerState(self.amplitudes.copy())

    def support(self) -> tuple[int, int] | None:
        """Smallest and largest occupied site, or None for the zero state."""
        occupied = np.flatnonzero(np.any(self.amplitudes != 0, axis=0))
        if occupied.size == 0:
            return None
        r = self.window_radius
        return int(occupied[0]) - r, int(occupied[-1]) - r

    def embedded(self, window_radius: int) -> WalkerState:
        """Copy of this state on a (larger or equal) window centred on the origin."""
        r = self.window_radius
        if window_radius < r:
            support = self.support()
            if support is not None and max(-support[0], support[1]) > window_radius:
                raise WindowError(f"state support {support} does not fit radius {window_radius}")
            amps = self.amplitudes[:, r - window_radius: r + window_radius + 1].copy()
            return WalkerState(amps)
        out = new_zero_state(window_radius)
        out.amplitudes[:, window_radius - r: window_radius + r + 1] = self.amplitudes
        return out


@dataclass(eq=False)
class Distribution:
    """Spatial probability distribution P(x, n) over a window."""

    probabilities: np.ndarray
    step_index: int = 0

    @property
    def window_radius(self) -> int:
        return (len(self.probabilities) - 1) // 2

    @property
    def sites(self) -> np.ndarray:
        r = self.window_radius
        return np.arange(-r, r + 1)

    def __getitem__(self, x: int) -> float:
        r = self.window_radius
        if not -r <= x <= r:
            raise WindowError(f"site {x} outside window [-{r}, {r}]")
        return float(self.probabilities[x + r])


def new_zero_state(window_radius: int) -> WalkerState:
    if window_radius < 0:
        raise ValueError("window_radius must be >= 0")
    return WalkerState(np.zeros((2, 2 * window_radius + 1), dtype=np.complex128))


def initial_symmetric(window_radius: int) -> WalkerState:
    """(|up> + i|down>)/sqrt(2) at the origin."""
    state = new_zero_state(window_radius)
    state.set_amplitude(UP, 0, 1 / np.sqrt(2))
    state.set_amplitude(DOWN, 0, 1j / np.sqrt(2))
    return state


def initial_spin_up(window_radius: int) -> WalkerState:
    state = new_zero_state(window_radius)
    state.set_amplitude(UP, 0, 1.0)
    return state


INITIAL_STATES = {
    "symmetric": initial_symmetric,
    "up": initial_spin_up,
}


def make_initial(tag: str, window_radius: int) -> WalkerState:
    try:
        factory = INITIAL_STATES[tag]
    except KeyError:
        raise ValueError(f"unknown initial state {tag!r}; choose from {sorted(INITIAL_STATES)}") from None
    return factory(window_radius)


def check_normalized(state: WalkerState, tol: float = NORMALIZED_TOL) -> None:
    norm_sq = float(np.vdot(state.amplitudes, state.amplitudes).real)
    if abs(norm_sq - 1.0) > tol:
        raise ValueError(f"state is not normalized: |psi|^2 = {norm_sq!r}")


def position_distribution(state: WalkerState, step_index: int = 0) -> Distribution:
    """Trace out the spin: P(x) = |a_up(x)|^2 + |a_down(x)|^2."""
    check_normalized(state)
    a = state.amplitudes
    probs = a.real ** 2 + a.imag ** 2
    return Distribution(probs[UP] + probs[DOWN], step_index)


def overlap(a: WalkerState, b: WalkerState) -> complex:
    """Inner product <a|b>, conjugate-linear in ``a``."""
    if a.amplitudes.shape != b.amplitudes.shape:
        raise WindowError(
            f"window mismatch: radius {a.window_radius} vs {b.window_radius}"
        )
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def random_state(window_radius: int, rng: np.random.Generator, support_radius: int | None = None) -> WalkerState:
    """Normalized random state supported on |x| <= support_radius."""
    if support_radius is None:
        support_radius = window_radius
    state = new_zero_state(window_radius)
    width = 2 * support_radius + 1
    block = rng.normal(size=(2, width)) + 1j * rng.normal(size=(2, width))
    lo = window_radius - support_radius
    state.amplitudes[:, lo: lo + width] = block
    return state.normalize()
