"""
A fluctuating phase
===================

At every step the phase phi*n picks up a random kick eps*R_n with R_n uniform
on [-1, 1]. Averaging 20 seeded runs shows that weak noise keeps the revivals
and the localization, while strong noise washes them out and the walker
starts to spread.
"""
# %%
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from phasewalk import NoiseSpec, evolve, run_ensemble
from phasewalk.observables import detect_revivals
from phasewalk.operators import ProtocolSpec
from phasewalk.state import make_initial

OUT = Path(__file__).with_name("out")
OUT.mkdir(exist_ok=True)
EPS = (1 / 20, 1 / 5, 1.0)

# %%
spec = ProtocolSpec.rational(1, 49)
initial = make_initial("symmetric", 201)
clean = evolve(initial, spec, 200)
print(f"noiseless max sigma: {clean.std_dev.max():.3f}")

fig, axes = plt.subplots(2, 2, figsize=(11, 7))
for eps in EPS:
    ens = run_ensemble(initial, spec, NoiseSpec(eps, runs=20, seed=0), 200)
    rep = detect_revivals(ens.return_probability, partial_threshold=0.05, min_separation=12, stride=2)
    print(f"1/49 eps={eps:<5g} maxima at {rep.steps}  sigma(200)={ens.std_dev[200]:.2f}")
    axes[0, 0].plot(ens.steps[::2], ens.return_probability[::2], label=f"eps={eps:g}")
    axes[0, 1].plot(ens.steps, ens.std_dev, label=f"eps={eps:g}")
axes[0, 0].set(title="phi/2pi = 1/49", xlabel="n", ylabel="<P(x_i, n)>")
axes[0, 1].set(xlabel="n", ylabel="<sigma>")
axes[0, 0].legend()

# %%
# The golden-ratio walk under the same noise levels, out to 1000 steps.
spec = ProtocolSpec.golden()
initial = make_initial("symmetric", 1001)
for eps in EPS:
    ens = run_ensemble(initial, spec, NoiseSpec(eps, runs=20, seed=0), 1000)
    p = ens.return_probability
    print(f"golden eps={eps:<5g} min over even n: {p[2::2].min():.4f}  tail mean: {p[900::2].mean():.4f}")
    axes[1, 0].plot(ens.steps[::2], p[::2], lw=0.6, label=f"eps={eps:g}")
    axes[1, 1].plot(ens.steps, ens.std_dev, label=f"eps={eps:g}")
axes[1, 0].set(title="golden ratio", xlabel="n", ylabel="<P(x_i, n)>")
axes[1, 1].set(xlabel="n", ylabel="<sigma>")
fig.tight_layout()
fig.savefig(OUT / "noisy_phase.png", dpi=120)
print("wrote", OUT / "noisy_phase.png")
