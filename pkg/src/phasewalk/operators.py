"""Coin and phase-imprinting shift operators, and the two walk protocols.

Standard step ``n``::

    W(n) = S(phi * n) C

Split step ``n``::

    W_ss(n) = S_down(phi * n) C2 S_up(phi * n) C1

Rightmost operator acts first. ``S`` moves spin up one site right with phase
``exp(+i theta)`` and spin down one site left with ``exp(-i theta)``; the
half shifts ``S_up``/``S_down`` move only one spin component.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .state import DOWN, UP, BoundaryOverflowError, WalkerState

TWO_PI = 2 * math.pi
_TWO_PI_LD = np.longdouble("6.283185307179586476925286766559005768")

GOLDEN_RATIO_CONJUGATE = (math.sqrt(5) - 1) / 2
GOLDEN_PHASE = TWO_PI * GOLDEN_RATIO_CONJUGATE


class Protocol(str, enum.Enum):
    STANDARD = "standard"
    SPLIT_STEP = "splitstep"


@dataclass(frozen=True, eq=False)
class CoinMatrix:
    """2x2 unitary acting on the spin at every site."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        if m.shape != (2, 2):
            raise ValueError(f"coin must be 2x2, got shape {m.shape}")
        if not np.allclose(m.conj().T @ m, np.eye(2), rtol=0, atol=1e-12):
            raise ValueError("coin matrix is not unitary")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __eq__(self, other):
        return isinstance(other, CoinMatrix) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def __matmul__(self, spinor):
        return self.matrix @ spinor

    def is_hadamard(self) -> bool:
        return self == hadamard_coin()


def hadamard_coin() -> CoinMatrix:
    return CoinMatrix(np.array([[1, 1], [1, -1]]) / math.sqrt(2))


def identity_coin() -> CoinMatrix:
    return CoinMatrix(np.eye(2))


@dataclass(frozen=True)
class ProtocolSpec:
    """Which walk operator to apply and with which phase factor ``phi``.

    A rational phase ``phi = 2*pi*p/q`` is best built with :meth:`rational`,
    which keeps ``(p, q)`` so step phases are reduced exactly with integer
    arithmetic. ``coins`` holds one coin for the standard protocol and two
    ``(C1, C2)`` for the split-step protocol; Hadamard by default.
    """

    kind: Protocol = Protocol.STANDARD
    phi: float = 0.0
    ratio: tuple[int, int] | None = None
    coins: tuple[CoinMatrix, ...] = field(default=())
    step_origin: int = 1

    def __post_init__(self):
        object.__setattr__(self, "kind", Protocol(self.kind))
        n_coins = 1 if self.kind is Protocol.STANDARD else 2
        if not self.coins:
            object.__setattr__(self, "coins", (hadamard_coin(),) * n_coins)
        elif len(self.coins) != n_coins:
            raise ValueError(f"{self.kind.value} protocol takes {n_coins} coin(s), got {len(self.coins)}")
        if self.ratio is not None:
            p, q = self.ratio
            if q < 1:
                raise ValueError(f"phase ratio denominator must be >= 1, got {q}")
            if math.gcd(abs(p), q) != 1:
                raise ValueError(f"phase ratio {p}/{q} is not in lowest terms")
            object.__setattr__(self, "ratio", (int(p), int(q)))
            object.__setattr__(self, "phi", TWO_PI * p / q)

    @classmethod
    def rational(cls, p: int, q: int, kind=Protocol.STANDARD, **kwargs) -> ProtocolSpec:
        return cls(kind=kind, ratio=(p, q), **kwargs)

    @classmethod
    def golden(cls, kind=Protocol.STANDARD, **kwargs) -> ProtocolSpec:
        return cls(kind=kind, phi=GOLDEN_PHASE, **kwargs)

    @property
    def phase_factor(self) -> float:
        """phi / 2pi."""
        if self.ratio is not None:
            return self.ratio[0] / self.ratio[1]
        return self.phi / TWO_PI

    def phase_at(self, n: int, phi: float | None = None) -> float:
        """Imprinted phase ``phi * n`` reduced into [0, 2pi) (sign kept for negative products)."""
        if phi is None and self.ratio is not None:
            p, q = self.ratio
            return TWO_PI * ((p * n) % q) / q
        value = self.phi if phi is None else phi
        return float(np.fmod(np.longdouble(value) * n, _TWO_PI_LD))


# Kernels working in place on a (2, m) amplitude block. Callers guarantee the
# block has room for the shift.

def _coin_block(a: np.ndarray, c: np.ndarray) -> None:
    up = a[UP].copy()
    a[UP] *= c[0, 0]
    a[UP] += c[0, 1] * a[DOWN]
    a[DOWN] *= c[1, 1]
    a[DOWN] += c[1, 0] * up


def _shift_up_block(a: np.ndarray, theta: float) -> None:
    row = a[UP]
    row[1:] = row[:-1] * complex(math.cos(theta), math.sin(theta))
    row[0] = 0


def _shift_down_block(a: np.ndarray, theta: float) -> None:
    row = a[DOWN]
    row[:-1] = row[1:] * complex(math.cos(theta), -math.sin(theta))
    row[-1] = 0


def _step_block(a: np.ndarray, kind: Protocol, coins: tuple[np.ndarray, ...], theta: float) -> None:
    if kind is Protocol.STANDARD:
        _coin_block(a, coins[0])
        _shift_up_block(a, theta)
        _shift_down_block(a, theta)
    else:
        _coin_block(a, coins[0])
        _shift_up_block(a, theta)
        _coin_block(a, coins[1])
        _shift_down_block(a, theta)


def _target(state: WalkerState, inplace: bool) -> WalkerState:
    return state if inplace else state.copy()


def _check_room(state: WalkerState, spins: tuple[int, ...]) -> None:
    a = state.amplitudes
    if UP in spins and a[UP, -1] != 0:
        raise BoundaryOverflowError("spin-up amplitude on the right window edge would be shifted out")
    if DOWN in spins and a[DOWN, 0] != 0:
        raise BoundaryOverflowError("spin-down amplitude on the left window edge would be shifted out")


def apply_coin(state: WalkerState, coin: CoinMatrix, inplace: bool = False) -> WalkerState:
    out = _target(state, inplace)
    _coin_block(out.amplitudes, coin.matrix)
    return out


def apply_shift_standard(state: WalkerState, phase: float, inplace: bool = False) -> WalkerState:
    """Spin-conditioned shift; ``phase`` is the full imprinted phase (phi times n)."""
    _check_room(state, (UP, DOWN))
    out = _target(state, inplace)
    _shift_up_block(out.amplitudes, phase)
    _shift_down_block(out.amplitudes, phase)
    return out


def apply_shift_up(state: WalkerState, phase: float, inplace: bool = False) -> WalkerState:
    _check_room(state, (UP,))
    out = _target(state, inplace)
    _shift_up_block(out.amplitudes, phase)
    return out


def apply_shift_down(state: WalkerState, phase: float, inplace: bool = False) -> WalkerState:
    _check_room(state, (DOWN,))
    out = _target(state, inplace)
    _shift_down_block(out.amplitudes, phase)
    return out


def apply_shift_adjoint(state: WalkerState, phase: float, inplace: bool = False) -> WalkerState:
    """Inverse of :func:`apply_shift_standard` with the same ``phase``."""
    a = state.amplitudes
    if a[UP, 0] != 0 or a[DOWN, -1] != 0:
        raise BoundaryOverflowError("inverse shift would move amplitude out of the window")
    out = _target(state, inplace)
    b = out.amplitudes
    b[UP, :-1] = b[UP, 1:] * complex(math.cos(phase), -math.sin(phase))
    b[UP, -1] = 0
    b[DOWN, 1:] = b[DOWN, :-1] * complex(math.cos(phase), math.sin(phase))
    b[DOWN, 0] = 0
    return out


def step(
    state: WalkerState,
    spec: ProtocolSpec,
    step_index: int,
    phase_override: float | None = None,
    inplace: bool = False,
) -> WalkerState:
    """Apply one walk step with index ``step_index``.

    ``phase_override`` replaces ``phi`` (it is still multiplied by the step index).
    """
    if step_index < spec.step_origin:
        raise ValueError(f"step_index {step_index} precedes step_origin {spec.step_origin}")
    theta = spec.phase_at(step_index, phase_override)
    if spec.kind is Protocol.STANDARD:
        out = apply_coin(state, spec.coins[0], inplace=inplace)
        return apply_shift_standard(out, theta, inplace=True)
    out = apply_coin(state, spec.coins[0], inplace=inplace)
    apply_shift_up(out, theta, inplace=True)
    apply_coin(out, spec.coins[1], inplace=True)
    return apply_shift_down(out, theta, inplace=True)
