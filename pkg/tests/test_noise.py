import math

import numpy as np
import pytest

from phasewalk.evolution import evolve
from phasewalk.noise import (
    NoiseSpec,
    fluctuated_phase,
    fluctuation_draws,
    noisy_step_phases,
    run_ensemble,
    run_trajectories,
)
from phasewalk.operators import ProtocolSpec
from phasewalk.state import initial_symmetric

PHI_49 = 2 * math.pi / 49


class TestFluctuatedPhase:
    def test_zero_noise(self):
        assert fluctuated_phase(PHI_49, 0.0, 0.731) == PHI_49

    def test_arithmetic(self):
        assert fluctuated_phase(1.0, 0.5, -1.0) == 0.5
        assert fluctuated_phase(1.0, 1.0, 1.0) == 2.0

    def test_range(self):
        with pytest.raises(ValueError):
            fluctuated_phase(1.0, 1.5, 0.0)


class TestNoiseSpec:
    def test_defaults(self):
        n = NoiseSpec(0.05)
        assert (n.runs, n.seed, n.model) == (20, 0, "jitter")

    @pytest.mark.parametrize("kwargs", [
        {"epsilon": -0.1}, {"epsilon": 1.1}, {"epsilon": 0.1, "runs": 0},
        {"epsilon": 0.1, "model": "gaussian"}, {"epsilon": 0.1, "distribution": "normal"},
        {"epsilon": 0.1, "seed": -1},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            NoiseSpec(**kwargs)


class TestDraws:
    def test_uniform_range(self):
        r = fluctuation_draws(NoiseSpec(0.1, seed=5), 3, 10_000)
        assert r.min() >= -1 and r.max() <= 1
        assert abs(r.mean()) < 0.03

    def test_streams_keyed_by_run(self):
        noise = NoiseSpec(0.1, seed=5)
        np.testing.assert_array_equal(fluctuation_draws(noise, 2, 50), fluctuation_draws(noise, 2, 50))
        assert not np.array_equal(fluctuation_draws(noise, 2, 50), fluctuation_draws(noise, 3, 50))
        other_seed = NoiseSpec(0.1, seed=6)
        assert not np.array_equal(fluctuation_draws(noise, 2, 50), fluctuation_draws(other_seed, 2, 50))

    def test_prefix_stable(self):
        noise = NoiseSpec(0.1, seed=1)
        np.testing.assert_array_equal(fluctuation_draws(noise, 0, 30), fluctuation_draws(noise, 0, 60)[:30])


class TestPhaseModels:
    draws = np.array([0.5, -1.0, 0.25, 1.0])

    def test_jitter(self):
        spec = ProtocolSpec(phi=0.3)
        theta = noisy_step_phases(spec, NoiseSpec(0.2, model="jitter"), self.draws)
        np.testing.assert_allclose(theta, 0.3 * np.arange(1, 5) + 0.2 * self.draws, atol=1e-15)

    def test_scaled(self):
        spec = ProtocolSpec(phi=0.3)
        theta = noisy_step_phases(spec, NoiseSpec(0.2, model="scaled"), self.draws)
        np.testing.assert_allclose(theta, (0.3 + 0.2 * self.draws) * np.arange(1, 5), atol=1e-15)

    def test_accumulated(self):
        spec = ProtocolSpec(phi=0.3)
        theta = noisy_step_phases(spec, NoiseSpec(0.2, model="accumulated"), self.draws)
        np.testing.assert_allclose(theta, np.cumsum(0.3 + 0.2 * self.draws), atol=1e-15)

    @pytest.mark.parametrize("model", ["jitter", "scaled", "accumulated"])
    def test_all_models_reduce_without_noise(self, model):
        spec = ProtocolSpec.rational(1, 49)
        theta = noisy_step_phases(spec, NoiseSpec(0.0, model=model), np.linspace(-1, 1, 100))
        ideal = [spec.phase_at(n) for n in range(1, 101)]
        np.testing.assert_allclose(np.exp(1j * theta), np.exp(1j * np.array(ideal)), atol=1e-12)


class TestEnsemble:
    @pytest.mark.parametrize("model", ["jitter", "scaled", "accumulated"])
    def test_zero_noise_equals_noiseless(self, model):
        spec = ProtocolSpec.rational(1, 49)
        init = initial_symmetric(121)
        ens = run_ensemble(init, spec, NoiseSpec(0.0, runs=5, model=model), 120)
        clean = evolve(init, spec, 120)
        np.testing.assert_allclose(ens.return_probability, clean.return_probability, atol=1e-12)
        np.testing.assert_allclose(ens.std_dev, clean.std_dev, atol=1e-12)

    def test_deterministic(self):
        spec = ProtocolSpec.golden()
        init = initial_symmetric(81)
        noise = NoiseSpec(0.3, runs=4, seed=11)
        a = run_ensemble(init, spec, noise, 80, keep_runs=True)
        b = run_ensemble(init, spec, noise, 80, keep_runs=True)
        assert a.return_probability.tobytes() == b.return_probability.tobytes()
        assert a.std_dev.tobytes() == b.std_dev.tobytes()

    def test_parallel_matches_serial(self):
        spec = ProtocolSpec.rational(1, 49)
        init = initial_symmetric(61)
        noise = NoiseSpec(0.5, runs=4, seed=2)
        serial = run_ensemble(init, spec, noise, 60)
        parallel = run_ensemble(init, spec, noise, 60, workers=2)
        assert serial.return_probability.tobytes() == parallel.return_probability.tobytes()

    def test_average_of_runs(self):
        spec = ProtocolSpec.rational(1, 49)
        init = initial_symmetric(61)
        ens = run_ensemble(init, spec, NoiseSpec(0.5, runs=6, seed=3), 60, keep_runs=True)
        assert ens.run_return_probability.shape == (6, 61)
        np.testing.assert_array_equal(ens.return_probability, ens.run_return_probability.mean(axis=0))
        np.testing.assert_array_equal(ens.std_dev, ens.run_std_dev.mean(axis=0))

    def test_run_permutation_invariance(self):
        spec = ProtocolSpec.rational(1, 49)
        init = initial_symmetric(61)
        trajs = run_trajectories(init, spec, NoiseSpec(0.5, runs=5, seed=3), 60)
        rp = np.stack([t.return_probability for t in trajs])
        perm = rp[[3, 0, 4, 2, 1]]
        np.testing.assert_allclose(perm.mean(axis=0), rp.mean(axis=0), atol=1e-15)

    def test_runs_use_independent_draws(self):
        spec = ProtocolSpec.rational(1, 49)
        trajs = run_trajectories(initial_symmetric(41), spec, NoiseSpec(0.5, runs=2), 40)
        assert not np.array_equal(trajs[0].return_probability, trajs[1].return_probability)

    def test_distributions_averaged(self):
        spec = ProtocolSpec.rational(1, 49)
        ens = run_ensemble(initial_symmetric(31), spec, NoiseSpec(0.5, runs=3), 30, record_distributions=True)
        assert ens.distributions.shape == (31, 63)
        np.testing.assert_allclose(ens.distributions.sum(axis=1), 1, atol=1e-12)
        np.testing.assert_allclose(ens.distributions[:, 31], ens.return_probability, atol=1e-15)
        assert (ens.runs, ens.seed, ens.n_steps) == (3, 0, 30)


def test_ensemble_steps_axis():
    spec = ProtocolSpec.rational(1, 8)
    ens = run_ensemble(initial_symmetric(11), spec, NoiseSpec(0.1, runs=2), 10)
    np.testing.assert_array_equal(ens.steps, np.arange(11))
