"""Experiment configuration: flags, flat key-value config files, JSON echo.

Config file grammar (UTF-8)::

    # comment
    key = value

One setting per line. Keys are the long flag names without the leading
dashes (``phase-ratio``, ``noise-eps``, ...); underscores are accepted in
place of dashes. Boolean keys take ``true``/``false``. Blank lines and lines
starting with ``#`` are ignored. ``preset = NAME`` is allowed.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass, fields, replace
from fractions import Fraction
from pathlib import Path

from .noise import NOISE_MODELS, NoiseSpec
from .operators import GOLDEN_PHASE, Protocol, ProtocolSpec
from .state import INITIAL_STATES

NAMED_PHASES = {"golden": GOLDEN_PHASE}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    name: str = "run"
    protocol: str = "standard"
    phase_ratio: tuple[int, int] | None = None
    phase: float | None = None
    phase_name: str | None = None
    initial: str = "symmetric"
    steps: int = 200
    noise_eps: tuple[float, ...] | None = None
    runs: int = 20
    seed: int = 0
    noise_model: str = "jitter"
    out: str = "."
    heatmap: bool = False
    record_dist: bool = False
    complete_tol: float = 1e-6
    partial_threshold: float = 0.3
    min_separation: int = 5
    step_origin: int = 1

    def validate(self) -> ExperimentConfig:
        phase_forms = [self.phase_ratio is not None, self.phase is not None, self.phase_name is not None]
        if sum(phase_forms) != 1:
            raise ConfigError("set exactly one phase: --phase-ratio p/q, --phase <radians> or --phase golden")
        if self.protocol not in {p.value for p in Protocol}:
            raise ConfigError(f"--protocol must be 'standard' or 'splitstep', got {self.protocol!r}")
        if self.initial not in INITIAL_STATES:
            raise ConfigError(f"--initial must be one of {sorted(INITIAL_STATES)}, got {self.initial!r}")
        if self.phase_name is not None and self.phase_name not in NAMED_PHASES:
            raise ConfigError(f"unknown named phase {self.phase_name!r}; known: {sorted(NAMED_PHASES)}")
        if self.steps < 0:
            raise ConfigError("--steps must be >= 0")
        if self.noise_eps is not None:
            if not self.noise_eps:
                raise ConfigError("--noise-eps needs at least one value")
            if not all(0 <= e <= 1 for e in self.noise_eps):
                raise ConfigError("--noise-eps values must lie in [0, 1]")
        if self.runs < 1:
            raise ConfigError("--runs must be >= 1")
        if self.seed < 0:
            raise ConfigError("--seed must be a non-negative integer")
        if self.noise_model not in NOISE_MODELS:
            raise ConfigError(f"--noise-model must be one of {NOISE_MODELS}")
        if not 0 < self.partial_threshold < 1 - self.complete_tol:
            raise ConfigError("need 0 < partial-threshold < 1 - complete-tol")
        if self.min_separation < 0:
            raise ConfigError("--min-separation must be >= 0")
        return self

    def protocol_spec(self) -> ProtocolSpec:
        kind = Protocol(self.protocol)
        if self.phase_ratio is not None:
            p, q = self.phase_ratio
            return ProtocolSpec.rational(p, q, kind=kind, step_origin=self.step_origin)
        phi = NAMED_PHASES[self.phase_name] if self.phase_name else self.phase
        return ProtocolSpec(kind=kind, phi=phi, step_origin=self.step_origin)

    def noise_specs(self) -> list[NoiseSpec]:
        """One NoiseSpec per requested epsilon; empty for a noiseless run."""
        if self.noise_eps is None:
            return []
        return [NoiseSpec(e, runs=self.runs, seed=self.seed, model=self.noise_model) for e in self.noise_eps]


FIELD_TYPES = {f.name: f.type for f in fields(ExperimentConfig)}
BOOL_KEYS = {"heatmap", "record_dist"}
INT_KEYS = {"steps", "runs", "seed", "min_separation", "step_origin"}
FLOAT_KEYS = {"complete_tol", "partial_threshold"}


def parse_phase_ratio(text: str) -> tuple[int, int]:
    """Parse ``"p/q"``; a ratio not in lowest terms is reduced with a warning."""
    try:
        p_text, q_text = text.split("/")
        p, q = int(p_text), int(q_text)
    except ValueError:
        raise ConfigError(f"malformed phase ratio {text!r}; expected p/q with integers p, q") from None
    if q < 1:
        raise ConfigError(f"phase ratio denominator must be >= 1, got {q}")
    g = math.gcd(abs(p), q)
    if g != 1:
        warnings.warn(f"phase ratio {p}/{q} reduced to {p // g}/{q // g}", stacklevel=2)
    return p // g, q // g


def parse_eps_list(value) -> tuple[float, ...] | None:
    """Comma-separated noise strengths; fractions such as ``1/20`` are accepted."""
    if value is None:
        return None
    if isinstance(value, (int, float)):
        return (float(value),)
    if not isinstance(value, str):
        return tuple(float(v) for v in value)
    if value.strip().lower() in {"", "none"}:
        return None
    try:
        return tuple(float(Fraction(part.strip())) for part in value.split(","))
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"malformed --noise-eps {value!r}; expected e.g. 0.05 or 1/20,1/5,1") from None


def parse_phase(text: str) -> dict:
    """``--phase`` value: a named constant or a literal in radians."""
    key = text.strip().lower()
    if key in NAMED_PHASES:
        return {"phase_name": key}
    try:
        return {"phase": float(text)}
    except ValueError:
        raise ConfigError(f"--phase takes radians or one of {sorted(NAMED_PHASES)}, got {text!r}") from None


def _parse_bool(text: str) -> bool:
    value = text.strip().lower()
    if value in {"1", "true", "yes", "on"}:
        return True
    if value in {"0", "false", "no", "off"}:
        return False
    raise ConfigError(f"expected true/false, got {text!r}")


def coerce_setting(key: str, value) -> dict:
    """Turn one raw (key, text) pair into ExperimentConfig field updates."""
    key = key.strip().replace("-", "_")
    if key == "phase_ratio":
        return {"phase_ratio": parse_phase_ratio(value) if isinstance(value, str) else tuple(value)}
    if key == "phase":
        return parse_phase(value) if isinstance(value, str) else {"phase": float(value)}
    if key == "noise_eps":
        return {"noise_eps": parse_eps_list(value)}
    if key not in FIELD_TYPES:
        raise ConfigError(f"unknown setting {key!r}")
    try:
        if key in BOOL_KEYS:
            return {key: value if isinstance(value, bool) else _parse_bool(value)}
        if key in INT_KEYS:
            return {key: int(value)}
        if key in FLOAT_KEYS:
            return {key: float(value)}
    except (TypeError, ValueError):
        raise ConfigError(f"bad value for {key}: {value!r}") from None
    return {key: str(value)}


def read_config_file(path) -> dict:
    """Raw settings from a key-value file, preset name included under ``preset``."""
    settings = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        settings[key.replace("-", "_")] = value
    return settings


def apply_settings(config: ExperimentConfig, settings: dict) -> ExperimentConfig:
    updates = {}
    for key, value in settings.items():
        if key in {"preset", "config"}:
            continue
        new = coerce_setting(key, value)
        if {"phase_ratio", "phase", "phase_name"} & new.keys():
            updates.update(phase_ratio=None, phase=None, phase_name=None)
        updates.update(new)
    return replace(config, **updates)


def format_config(config: ExperimentConfig) -> str:
    """Key-value text that :func:`read_config_file` parses back to ``config``."""
    lines = []
    for key, value in config_to_mapping(config).items():
        if value is None:
            continue
        if key == "phase_name":
            key = "phase"
        elif key == "phase":
            value = repr(float(value))
        elif key == "phase_ratio":
            value = f"{value[0]}/{value[1]}"
        elif key == "noise_eps":
            value = ",".join(repr(float(e)) for e in value)
        elif isinstance(value, bool):
            value = "true" if value else "false"
        elif isinstance(value, float):
            value = repr(value)
        lines.append(f"{key.replace('_', '-')} = {value}")
    return "\n".join(lines) + "\n"


def config_to_mapping(config: ExperimentConfig) -> dict:
    data = asdict(config)
    for key in ("phase_ratio", "noise_eps"):
        if data[key] is not None:
            data[key] = list(data[key])
    return data


def config_from_mapping(data: dict) -> ExperimentConfig:
    data = dict(data)
    for key in ("phase_ratio", "noise_eps"):
        if data.get(key) is not None:
            data[key] = tuple(data[key])
    unknown = set(data) - FIELD_TYPES.keys()
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return ExperimentConfig(**data).validate()
