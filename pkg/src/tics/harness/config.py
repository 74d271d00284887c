"""Experiment configuration: JSON-loadable mirror of the run parameters."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from ..agent import ModelSpec, ShapingConfig
from ..core import LearnerConfig
from ..domains import DOMAIN_NAMES
from ..teacher import TeacherConfig

CRITERION_NAMES = ("sorting-4", "sorting-5", "maze-24")

FULL_SCALE_SESSIONS = 1000
DESK_SCALE_SESSIONS = 200


@dataclass
class ExperimentConfig:
    """Everything a batch run depends on; (config, base_seed) determines every
    emitted number."""

    domain: str = "sorting"
    model: ModelSpec = field(default_factory=ModelSpec)
    tm_variant: str = "ActorCritic"
    sessions: int = FULL_SCALE_SESSIONS
    episodes: int = 1000
    max_steps: int = 1000
    learner: LearnerConfig = field(default_factory=LearnerConfig)
    teacher: TeacherConfig = field(default_factory=TeacherConfig)
    shaping: ShapingConfig | None = None
    base_seed: int = 0
    criterion: str | None = None

    def __post_init__(self) -> None:
        if self.domain not in DOMAIN_NAMES:
            raise ValueError(f"unknown domain {self.domain!r}; expected one of {DOMAIN_NAMES}")
        if self.tm_variant not in ("ActorCritic", "QLearner"):
            raise ValueError(f"unknown task model variant {self.tm_variant!r}")
        for name in ("sessions", "episodes", "max_steps"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.criterion is not None and self.criterion not in CRITERION_NAMES:
            raise ValueError(f"unknown criterion {self.criterion!r}")
        if self.criterion is None:
            self.criterion = "sorting-4" if self.domain.startswith("sorting") else "maze-24"

    def replace(self, **kwargs) -> "ExperimentConfig":
        data = {
            "domain": self.domain,
            "model": self.model,
            "tm_variant": self.tm_variant,
            "sessions": self.sessions,
            "episodes": self.episodes,
            "max_steps": self.max_steps,
            "learner": self.learner,
            "teacher": self.teacher,
            "shaping": self.shaping,
            "base_seed": self.base_seed,
            "criterion": self.criterion,
        }
        data.update(kwargs)
        return ExperimentConfig(**data)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["model"] = {"sources": list(self.model.sources), "interpretation": self.model.interpretation}
        if self.shaping is None:
            d.pop("shaping")
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        data = dict(data)
        if "model" in data and isinstance(data["model"], dict):
            m = data["model"]
            data["model"] = ModelSpec(
                sources=tuple(m.get("sources", ("feedback",))),
                interpretation=m.get("interpretation", "none"),
            )
        if "learner" in data and isinstance(data["learner"], dict):
            data["learner"] = LearnerConfig(**data["learner"])
        if "teacher" in data and isinstance(data["teacher"], dict):
            data["teacher"] = TeacherConfig(**data["teacher"])
        if "shaping" in data and isinstance(data["shaping"], dict):
            data["shaping"] = ShapingConfig(**data["shaping"])
        return cls(**data)

    @classmethod
    def from_json(cls, path: str | Path) -> "ExperimentConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def to_json(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
