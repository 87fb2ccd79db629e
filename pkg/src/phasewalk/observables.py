"""Return probability, moments, and revival detection."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .operators import Protocol
from .state import Distribution, WalkerState, check_normalized


def return_probability(state: WalkerState, x_i: int = 0) -> float:
    check_normalized(state)
    a = state.amplitudes[:, state.index(x_i)]
    # same operation order as position_distribution, so the two agree bit for bit
    probs = a.real ** 2 + a.imag ** 2
    return float(probs[0] + probs[1])


def mean_position(dist: Distribution) -> float:
    return float(dist.sites @ dist.probabilities)


def std_dev(dist: Distribution) -> float:
    x = dist.sites
    p = dist.probabilities
    m1 = float(x @ p)
    m2 = float((x * x) @ p)
    return float(np.sqrt(max(m2 - m1 * m1, 0.0)))


def parity_stride(kind) -> int:
    """Sampling stride of the return probability.

    The standard protocol moves every component by exactly one site per step,
    so a walker started on one site has zero probability there after any odd
    number of steps. The split step can stay put, so every step counts.
    """
    return 2 if Protocol(kind) is Protocol.STANDARD else 1


def reachable_steps(n_steps: int, stride: int) -> np.ndarray:
    """Steps n >= 1 at which the initial site can be occupied."""
    return np.arange(stride, n_steps + 1, stride)


def min_return_probability(series, stride: int = 1) -> float | None:
    """Minimum of ``series[n]`` over reachable steps n >= 1, None if there are none."""
    series = np.asarray(series)
    steps = reachable_steps(len(series) - 1, stride)
    if steps.size == 0:
        return None
    return float(series[steps].min())


class RevivalKind(str, enum.Enum):
    COMPLETE = "complete"
    PARTIAL = "partial"


@dataclass(frozen=True)
class RevivalEvent:
    step: int
    kind: RevivalKind
    peak_return_probability: float


@dataclass
class RevivalReport:
    events: list[RevivalEvent] = field(default_factory=list)
    inferred_period: int | None = None

    @property
    def complete_steps(self) -> list[int]:
        return [e.step for e in self.events if e.kind is RevivalKind.COMPLETE]

    @property
    def partial_steps(self) -> list[int]:
        return [e.step for e in self.events if e.kind is RevivalKind.PARTIAL]

    @property
    def steps(self) -> list[int]:
        return [e.step for e in self.events]

    def to_dict(self) -> dict:
        return {
            "events": [
                {"step": e.step, "kind": e.kind.value, "peak_return_probability": e.peak_return_probability}
                for e in self.events
            ],
            "inferred_period": self.inferred_period,
        }


def _regular_spacing(steps: list[int], tol: int = 1) -> int | None:
    if not steps:
        return None
    gaps = np.diff([0, *steps])
    if np.all(np.abs(gaps - gaps[0]) <= tol):
        return int(round(gaps.mean()))
    return None


def detect_revivals(
    series,
    complete_tol: float = 1e-6,
    partial_threshold: float = 0.3,
    min_separation: int = 5,
    stride: int = 1,
    tie_tol: float = 1e-9,
) -> RevivalReport:
    """Find revival peaks in a return-probability series.

    ``series[n]`` is the return probability after ``n`` steps; ``series[0]``
    is the initial state and serves only as context. With ``stride=2`` only
    even steps are examined (use :func:`parity_stride`).

    A peak is a run of consecutive samples equal within ``tie_tol`` that is
    strictly higher than every other sample within ``min_separation`` steps of
    it. A two-sample run is reported at its midpoint, which places the
    symmetric pair around an odd-step return (e.g. steps 48 and 50) at step 49.
    Peaks at or above ``1 - complete_tol`` are complete revivals; those in
    ``[partial_threshold, 1 - complete_tol)`` are partial.

    ``inferred_period`` is the common spacing (within one step, counted from
    step 0) of the complete revivals, or of the partial ones when there are
    no complete revivals.
    """
    values = np.asarray(series, dtype=float)
    if values.ndim != 1 or values.size == 0:
        raise ValueError("series must be a non-empty 1D sequence")
    if not 0 < partial_threshold < 1 - complete_tol:
        raise ValueError("need 0 < partial_threshold < 1 - complete_tol")
    if stride < 1 or min_separation < 0:
        raise ValueError("stride must be >= 1 and min_separation >= 0")

    steps = np.arange(0, values.size, stride)
    v = values[steps]
    reach = max(min_separation // stride, 1)

    events = []
    i = 0
    while i < v.size:
        j = i
        while j + 1 < v.size and abs(v[j + 1] - v[i]) <= tie_tol:
            j += 1
        run_top = v[i:j + 1].max()
        lo = max(0, i - reach)
        hi = min(v.size, j + reach + 1)
        neighbours = np.concatenate([v[lo:i], v[j + 1:hi]])
        is_peak = neighbours.size > 0 and bool(np.all(run_top > neighbours + tie_tol))
        if is_peak and i > 0 and run_top >= partial_threshold:
            step = int((steps[i] + steps[j]) // 2)
            kind = RevivalKind.COMPLETE if run_top >= 1 - complete_tol else RevivalKind.PARTIAL
            events.append(RevivalEvent(step, kind, float(run_top)))
        i = j + 1

    report = RevivalReport(events)
    report.inferred_period = _regular_spacing(report.complete_steps) or (
        None if report.complete_steps else _regular_spacing(report.partial_steps)
    )
    return report


def revival_report(traj, **kwargs) -> RevivalReport:
    """:func:`detect_revivals` on a trajectory or ensemble, with the protocol's parity stride."""
    kwargs.setdefault("stride", parity_stride(traj.spec.kind))
    return detect_revivals(traj.return_probability, **kwargs)
