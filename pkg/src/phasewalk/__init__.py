"""Discrete-time quantum walks on a line with a time- and spin-dependent phase shift."""

__version__ = "0.1.0"

from .evolution import Trajectory, evolve, max_excursion
from .noise import EnsembleResult, NoiseSpec, fluctuated_phase, run_ensemble
from .observables import (
    RevivalEvent,
    RevivalKind,
    RevivalReport,
    detect_revivals,
    mean_position,
    min_return_probability,
    parity_stride,
    return_probability,
    revival_report,
    std_dev,
)
from .operators import (
    GOLDEN_PHASE,
    CoinMatrix,
    Protocol,
    ProtocolSpec,
    apply_coin,
    apply_shift_down,
    apply_shift_standard,
    apply_shift_up,
    hadamard_coin,
    step,
)
from .state import (
    BoundaryOverflowError,
    Distribution,
    WalkerState,
    WindowError,
    initial_spin_up,
    initial_symmetric,
    new_zero_state,
    overlap,
    position_distribution,
)
