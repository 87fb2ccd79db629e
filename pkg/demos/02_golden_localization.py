"""
Localization for an irrational phase factor
===========================================

With phi/2pi equal to the golden ratio (sqrt(5) - 1)/2 the phase sequence never
repeats, so there are no exact revivals. The walker still stays put: its
return probability (sampled on the even steps where the start site can be
occupied at all) never drops below about 0.32 and sigma stays under 3.
"""
# %%
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from phasewalk import evolve
from phasewalk.observables import min_return_probability, parity_stride
from phasewalk.operators import ProtocolSpec
from phasewalk.state import make_initial

OUT = Path(__file__).with_name("out")
OUT.mkdir(exist_ok=True)
N = 1000

spec = ProtocolSpec.golden()
traj = evolve(make_initial("symmetric", N + 1), spec, N)
stride = parity_stride(spec.kind)

print(f"min P(x_i, n) over even n <= {N}: {min_return_probability(traj.return_probability, stride):.4f}")
print(f"max sigma: {traj.std_dev.max():.4f}")

# %%
# Compare against the free walk (phi = 0), which spreads ballistically.
free = evolve(make_initial("symmetric", N + 1), ProtocolSpec(phi=0.0), N)
print(f"free walk sigma({N}) = {free.std_dev[N]:.1f}")

fig, (a, b) = plt.subplots(1, 2, figsize=(10, 3.5))
a.plot(traj.steps[::stride], traj.return_probability[::stride], lw=0.6)
a.axhline(0.32, color="k", ls=":")
a.set(xlabel="n", ylabel="P(x_i, n)", title="golden ratio phase")
b.plot(traj.steps, traj.std_dev, label="golden")
b.plot(free.steps, free.std_dev, label="phi = 0")
b.set(xlabel="n", ylabel="sigma", yscale="log")
b.legend()
fig.tight_layout()
fig.savefig(OUT / "golden_localization.png", dpi=120)
print("wrote", OUT / "golden_localization.png")
