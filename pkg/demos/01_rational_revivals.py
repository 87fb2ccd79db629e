"""
Revivals for a rational phase factor
====================================

With phi/2pi = p/q the phase imprinted at step n repeats every q steps, and
the walker keeps coming back to its starting site. For even q it returns after
q steps; for odd q the first full return waits until 2q, with a partial one
at q. The spread never grows past a bound set by q.
"""
# %%
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from phasewalk import evolve
from phasewalk.observables import revival_report
from phasewalk.operators import ProtocolSpec
from phasewalk.state import make_initial

OUT = Path(__file__).with_name("out")
OUT.mkdir(exist_ok=True)
N = 200

# %%
# Three phase factors, same symmetric initial spinor (1, i)/sqrt(2) at x = 0.
runs = {q: evolve(make_initial("symmetric", N + 1), ProtocolSpec.rational(1, q), N, record_distributions=True)
        for q in (200, 100, 49)}

for q, traj in runs.items():
    rep = revival_report(traj)
    print(f"1/{q:<3d} complete={rep.complete_steps} partial={rep.partial_steps} "
          f"max sigma={traj.std_dev.max():.2f}")

# %%
# The starting spin does not move the revival steps, only what happens in between.
up = evolve(make_initial("up", N + 1), ProtocolSpec.rational(1, 49), N)
print("spin-up start, 1/49:", revival_report(up).steps)

# %%
fig, axes = plt.subplots(2, 3, figsize=(12, 6), sharex="col")
for col, (q, traj) in enumerate(runs.items()):
    d = traj.distributions
    r = (d.shape[1] - 1) // 2
    w = 40
    axes[0, col].imshow(d[:, r - w:r + w + 1].T, aspect="auto", origin="lower",
                        extent=(0, N, -w, w), cmap="magma")
    axes[0, col].set_title(f"phi/2pi = 1/{q}")
    axes[1, col].plot(traj.steps[::2], traj.return_probability[::2], label="P(x_i, n), even n")
    axes[1, col].plot(traj.steps, traj.std_dev / 30, label="sigma / 30")
    axes[1, col].set_xlabel("n")
axes[0, 0].set_ylabel("x")
axes[1, 0].legend(loc="upper right")
fig.tight_layout()
fig.savefig(OUT / "rational_revivals.png", dpi=120)
print("wrote", OUT / "rational_revivals.png")

# %%
# How close to exact is a revival? The defect 1 - P(x_i, q) roughly halves
# with every two extra steps in the period, so it is invisible for large q
# but easy to see for small ones.
for q in (4, 8, 16, 32, 64):
    p = evolve(make_initial("symmetric", q + 1), ProtocolSpec.rational(1, q), q).return_probability[q]
    print(f"q={q:3d}  1 - P(x_i, q) = {1 - p:.3e}")
