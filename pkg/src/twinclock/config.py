"""
Run configuration: a JSON document with five sections.

Every key is optional; missing keys take the defaults below, which describe
the 1.1 cm cavity shaken 500 times at 1.7e15 m/s**2. Unknown sections or
keys are rejected. Values given on the command line override the file.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError
from .experiment import HardwareConstraints
from .kinematics import DEFAULT_LIGHT_SPEED, CavitySetup, TrajectorySpec


@dataclass(frozen=True)
class MediumConfig:
    light_speed_m_per_s: float = DEFAULT_LIGHT_SPEED


@dataclass(frozen=True)
class CavityConfig:
    length_m: float = 0.011
    mode_cutoff: int = 20


@dataclass(frozen=True)
class TrajectoryConfig:
    proper_acceleration_m_per_s2: float = 1.7e15
    accel_duration_s: float = 1e-9
    inertial_duration_s: float = 0.0
    repetitions: int = 500


@dataclass(frozen=True)
class NumericsConfig:
    closed_form_sum_cutoff: int = 20
    quadrature_rel_tol: float = 1e-12


@dataclass(frozen=True)
class ConstraintsConfig:
    max_acceleration: float = 1.7e15
    max_displacement: float = 3e-3
    max_total_time: float = 2e-6
    min_segment_time: float = 1e-9
    plasma_frequency: float | None = None


_SECTIONS = {
    "medium": MediumConfig,
    "cavity": CavityConfig,
    "trajectory": TrajectoryConfig,
    "numerics": NumericsConfig,
    "constraints": ConstraintsConfig,
}

_INT_FIELDS = {"mode_cutoff", "repetitions", "closed_form_sum_cutoff"}


def _coerce(section: str, key: str, value):
    where = f"{section}.{key}"
    if key == "plasma_frequency" and value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where} must be a number, got {value!r}")
    if key in _INT_FIELDS:
        if int(value) != value:
            raise ConfigError(f"{where} must be an integer, got {value!r}")
        return int(value)
    return float(value)


@dataclass(frozen=True)
class RunConfig:
    medium: MediumConfig = field(default_factory=MediumConfig)
    cavity: CavityConfig = field(default_factory=CavityConfig)
    trajectory: TrajectoryConfig = field(default_factory=TrajectoryConfig)
    numerics: NumericsConfig = field(default_factory=NumericsConfig)
    constraints: ConstraintsConfig = field(default_factory=ConstraintsConfig)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("configuration must be a JSON object")
        sections = {}
        for name, body in data.items():
            if name not in _SECTIONS:
                raise ConfigError(f"unknown section {name!r}")
            if not isinstance(body, dict):
                raise ConfigError(f"section {name!r} must be an object")
            known = {f.name for f in dataclasses.fields(_SECTIONS[name])}
            for key in body:
                if key not in known:
                    raise ConfigError(f"unknown key {name}.{key}")
            values = {k: _coerce(name, k, v) for k, v in body.items()}
            sections[name] = _SECTIONS[name](**values)
        config = cls(**sections)
        config.validate()
        return config

    @classmethod
    def load(cls, path: str | Path) -> "RunConfig":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read {path}: {exc}") from exc
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def override(self, section: str, key: str, value) -> "RunConfig":
        """Copy with one value replaced (used for command-line flags)."""
        data = self.to_dict()
        if section not in data or key not in data[section]:
            raise ConfigError(f"unknown key {section}.{key}")
        data[section][key] = value
        return RunConfig.from_dict(data)

    def validate(self) -> None:
        try:
            self.cavity_setup()
            self.trajectory_spec()
            self.hardware_constraints()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if self.numerics.closed_form_sum_cutoff < 2:
            raise ConfigError("numerics.closed_form_sum_cutoff must be >= 2")
        if not self.numerics.quadrature_rel_tol > 0:
            raise ConfigError("numerics.quadrature_rel_tol must be positive")

    def cavity_setup(self) -> CavitySetup:
        return CavitySetup(self.cavity.length_m, self.medium.light_speed_m_per_s, self.cavity.mode_cutoff)

    def trajectory_spec(self) -> TrajectorySpec:
        t = self.trajectory
        return TrajectorySpec(t.proper_acceleration_m_per_s2, t.accel_duration_s,
                              t.inertial_duration_s, t.repetitions)

    def hardware_constraints(self) -> HardwareConstraints:
        return HardwareConstraints(**dataclasses.asdict(self.constraints))
