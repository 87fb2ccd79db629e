import json
import math

import numpy as np
import pytest

from phasewalk.cli import main, parse_config
from phasewalk.config import (
    ConfigError,
    ExperimentConfig,
    config_from_mapping,
    format_config,
    parse_phase_ratio,
)
from phasewalk.experiment import run_experiment
from phasewalk.operators import GOLDEN_PHASE
from phasewalk.output import read_pgm
from phasewalk.presets import PRESETS, get_preset


class TestParsing:
    def test_phase_ratio(self):
        cfg = parse_config(["--phase-ratio", "1/49"])
        assert cfg.phase_ratio == (1, 49)
        assert cfg.protocol_spec().phi == pytest.approx(2 * math.pi / 49)

    def test_ratio_reduced_with_warning(self):
        with pytest.warns(UserWarning, match="reduced to 1/49"):
            assert parse_phase_ratio("2/98") == (1, 49)

    @pytest.mark.parametrize("text", ["1-49", "a/b", "1/0", "1/2/3"])
    def test_malformed_ratio(self, text):
        with pytest.raises(ConfigError):
            parse_phase_ratio(text)

    def test_golden(self):
        cfg = parse_config(["--phase", "golden"])
        assert cfg.protocol_spec().phi == pytest.approx(2 * math.pi * (math.sqrt(5) - 1) / 2)
        assert cfg.protocol_spec().phi == GOLDEN_PHASE

    def test_literal_phase(self):
        assert parse_config(["--phase", "0.25"]).protocol_spec().phi == 0.25

    def test_exactly_one_phase(self):
        with pytest.raises(ConfigError, match="exactly one phase"):
            parse_config(["--steps", "3"])

    def test_noise_eps_list(self):
        cfg = parse_config(["--phase-ratio", "1/49", "--noise-eps", "1/20,1/5,1"])
        assert cfg.noise_eps == (0.05, 0.2, 1.0)
        assert [n.epsilon for n in cfg.noise_specs()] == [0.05, 0.2, 1.0]

    def test_invalid_values(self):
        with pytest.raises(ConfigError):
            parse_config(["--phase-ratio", "1/49", "--noise-eps", "2"])
        with pytest.raises(ConfigError):
            parse_config(["--phase-ratio", "1/49", "--steps", "-1"])
        with pytest.raises(ConfigError, match="unknown preset"):
            parse_config(["--preset", "fig9"])

    def test_preset_with_override(self):
        cfg = parse_config(["--preset", "fig1c", "--initial", "up", "--phase-ratio", "1/100"])
        assert cfg.initial == "up"
        assert cfg.phase_ratio == (1, 100)
        assert cfg.name == "fig1c" and cfg.heatmap

    def test_flags_override_file(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text(
            "# sweep\npreset = fig4a\nsteps = 50\nrecord_dist = true\nnoise-eps = 1/5\n\nseed=7\n",
            encoding="utf-8",
        )
        cfg = parse_config(["--config", str(path), "--steps", "60"])
        assert cfg.steps == 60
        assert cfg.seed == 7 and cfg.record_dist
        assert cfg.noise_eps == (0.2,)
        assert cfg.phase_ratio == (1, 49)

    def test_file_errors(self, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("steps 10\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="key = value"):
            parse_config(["--config", str(path)])
        path.write_text("colour = red\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="unknown setting"):
            parse_config(["--config", str(path)])


class TestRoundTrip:
    @pytest.mark.parametrize("name", list(PRESETS))
    def test_json_echo(self, name):
        cfg = get_preset(name)
        echoed = json.loads(json.dumps(run_summary_config(cfg)))
        assert config_from_mapping(echoed) == cfg

    @pytest.mark.parametrize("cfg", [
        get_preset("fig2", seed=3),
        get_preset("fig4c"),
        ExperimentConfig(phase=0.123456789012345678, noise_eps=(0.1,), noise_model="accumulated"),
    ])
    def test_key_value_file(self, cfg, tmp_path):
        path = tmp_path / "cfg.txt"
        path.write_text(format_config(cfg), encoding="utf-8")
        assert parse_config(["--config", str(path)]) == cfg


def run_summary_config(cfg):
    from phasewalk.config import config_to_mapping
    return config_to_mapping(cfg)


class TestRunExperiment:
    def test_zero_steps(self, tmp_path):
        cfg = ExperimentConfig(phase_ratio=(1, 4), steps=0, out=str(tmp_path))
        run_experiment(cfg)
        lines = (tmp_path / "run_timeseries.csv").read_text().splitlines()
        assert lines[0] == "step,return_probability,mean_position,std_dev"
        assert len(lines) == 2
        step, prob, mean, sd = (float(v) for v in lines[1].split(","))
        assert (step, mean, sd) == (0, 0, 0)
        assert prob == pytest.approx(1, abs=1e-15)

    def test_fig1a_summary(self, tmp_path):
        result = run_experiment(get_preset("fig1a", out=str(tmp_path)))
        summary = json.loads((tmp_path / "fig1a_summary.json").read_text())
        assert summary == json.loads(json.dumps(result.summary))
        events = summary["revivals"]["events"]
        assert [(e["step"], e["kind"]) for e in events] == [(200, "complete")]
        assert summary["max_excursion"] == pytest.approx(26, abs=2)
        assert config_from_mapping(summary["config"]) == get_preset("fig1a", out=str(tmp_path))

        heat = np.loadtxt(tmp_path / "fig1a_heatmap.csv", delimiter=",", skiprows=1)
        assert heat.shape == (201, 402)
        np.testing.assert_allclose(heat[:, 1:].sum(axis=1), 1, atol=1e-12)
        header = (tmp_path / "fig1a_heatmap.csv").read_text().splitlines()[0].split(",")
        assert header[1] == "-200" and header[-1] == "200"
        pgm = read_pgm(tmp_path / "fig1a_heatmap.pgm")
        assert pgm.shape == (201, 401)
        assert (pgm.max(axis=1) == 255).all()

        series = np.loadtxt(tmp_path / "fig1a_timeseries.csv", delimiter=",", skiprows=1)
        assert series.shape == (201, 4)
        assert series[200, 1] == pytest.approx(1, abs=1e-9)

    def test_fig2_summary(self, tmp_path):
        run_experiment(get_preset("fig2", out=str(tmp_path)))
        summary = json.loads((tmp_path / "fig2_summary.json").read_text())
        assert summary["min_return_probability"] >= 0.32
        assert summary["max_std_dev"] < 3

    def test_byte_identical(self, tmp_path):
        cfg_a = ExperimentConfig(phase_name="golden", steps=60, noise_eps=(0.2,), runs=3, seed=9,
                                 heatmap=True, record_dist=True, out=str(tmp_path / "a"))
        run_experiment(cfg_a)
        run_experiment(ExperimentConfig(**{**cfg_a.__dict__, "out": str(tmp_path / "b")}))
        for f in sorted((tmp_path / "a").iterdir()):
            other = tmp_path / "b" / f.name
            if f.suffix == ".json":
                a = json.loads(f.read_text())
                b = json.loads(other.read_text())
                a["config"].pop("out"), b["config"].pop("out")
                assert a == b
            else:
                assert f.read_bytes() == other.read_bytes(), f.name

    def test_sweep_outputs(self, tmp_path):
        cfg = ExperimentConfig(phase_ratio=(1, 49), steps=40, noise_eps=(0.05, 1.0), runs=2, out=str(tmp_path))
        result = run_experiment(cfg)
        names = {p.name for p in result.files}
        assert {"run_eps0.05_timeseries.csv", "run_eps1_timeseries.csv", "run_summary.json"} <= names
        assert [r["noise"]["epsilon"] for r in result.summary["results"]] == [0.05, 1.0]

    def test_distribution_csv(self, tmp_path):
        run_experiment(ExperimentConfig(phase_ratio=(1, 8), steps=4, record_dist=True, out=str(tmp_path)))
        rows = np.loadtxt(tmp_path / "run_distribution.csv", delimiter=",", skiprows=1)
        assert rows.shape == (5 * 9, 3)
        for n in range(5):
            assert rows[rows[:, 0] == n, 2].sum() == pytest.approx(1)


class TestMain:
    def test_success(self, tmp_path, capsys):
        assert main(["--phase-ratio", "1/10", "--steps", "20", "--out", str(tmp_path)]) == 0
        assert "run_summary.json" in capsys.readouterr().out

    def test_config_error_exit(self, capsys):
        assert main(["--phase-ratio", "x"]) == 2
        assert "malformed phase ratio" in capsys.readouterr().err

    def test_reduction_warning_printed(self, tmp_path, capsys):
        assert main(["--phase-ratio", "2/98", "--steps", "4", "--out", str(tmp_path)]) == 0
        assert "reduced to 1/49" in capsys.readouterr().err

    def test_io_error_exit(self, tmp_path, capsys):
        blocker = tmp_path / "file"
        blocker.write_text("x")
        assert main(["--phase-ratio", "1/10", "--steps", "2", "--out", str(blocker / "sub")]) == 1
        assert "cannot write" in capsys.readouterr().err
