"""Experiment configuration: a single JSON-serializable record shared by the
CLI, the run loop, and the verification harness. Round-trips losslessly."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .geometry import Point, Triangle

MODES = ("simulate", "theorem", "verify", "render", "sweep")
OFFSET_POLICIES = ("unit", "pilot")

# canonical root triangle: chain start, chain end, apex
DEFAULT_TRIANGLE = [[-1.0, 1.0], [1.0, 1.0], [0.0, -1.0]]


@dataclass
class ExperimentConfig:
    mode: str = "simulate"
    triangle: list = field(default_factory=lambda: [list(v) for v in DEFAULT_TRIANGLE])
    circle_radius: float = 30.0
    circle_center: list = field(default_factory=lambda: [0.0, 0.0])
    horizon: int = 400
    trials: int = 1
    seed: int = 0
    wedges: int = 8
    start_offset_policy: str = "unit"
    epsilon0: float = 0.5
    out_dir: str = "out"
    tolerance_overrides: dict = field(default_factory=dict)

    def validate(self) -> "ExperimentConfig":
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.start_offset_policy not in OFFSET_POLICIES:
            raise ValueError(
                f"start_offset_policy must be one of {OFFSET_POLICIES}")
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.wedges < 1:
            raise ValueError("wedges must be >= 1")
        if self.circle_radius <= 0:
            raise ValueError("circle_radius must be positive")
        if self.epsilon0 <= 0:
            raise ValueError("epsilon0 must be positive")
        self.triangle_obj()  # raises on degenerate vertices
        return self

    def triangle_obj(self) -> Triangle:
        (ax, ay), (bx, by), (cx, cy) = self.triangle
        return Triangle(Point(ax, ay), Point(bx, by), Point(cx, cy))

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data).validate()

    def to_json(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")

    @classmethod
    def from_json(cls, path: str | Path) -> "ExperimentConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def apply_override(self, assignment: str) -> None:
        """Apply one `key=value` (or `dict_field.subkey=value`) override.
        Values are parsed as JSON, falling back to a bare string."""
        key, _, raw = assignment.partition("=")
        if not _:
            raise ValueError(f"override must look like key=value: {assignment!r}")
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        head, _, sub = key.partition(".")
        if head not in self.__dataclass_fields__:
            raise ValueError(f"unknown config key {head!r}")
        if sub:
            target = getattr(self, head)
            if not isinstance(target, dict):
                raise ValueError(f"{head!r} is not a mapping")
            target[sub] = value
        else:
            setattr(self, head, value)
