"""Pipeline configuration: thresholds, port endpoints, data locations.

Every tunable constant of the pipeline lives here with its default; module
code receives values from a config instance rather than hardcoding them.
Endpoints may also come from environment variables (CPPGEN_OCR_URL,
CPPGEN_TEXT_CLASSIFIER_URL, CPPGEN_ICON_CLASSIFIER_URL).
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError

_ENV_ENDPOINTS = {
    "ocr_url": "CPPGEN_OCR_URL",
    "text_classifier_url": "CPPGEN_TEXT_CLASSIFIER_URL",
    "icon_classifier_url": "CPPGEN_ICON_CLASSIFIER_URL",
}

# (low, high, low_inclusive, high_inclusive) per threshold field
_RANGES = {
    "paragraph_prob": (0.0, 1.0, True, True),
    "phrase_sim": (0.0, 1.0, True, True),
    "iou_beta": (0.0, 1.0, True, True),
    "segment_sim": (0.0, None, True, True),
    "min_area_fraction": (0.0, 1.0, True, True),
    "max_area_fraction": (0.0, 1.0, False, True),
    "min_aspect": (0.0, None, True, True),
    "icon_distance_threshold": (0.0, None, True, True),
}


@dataclass
class PipelineConfig:
    taxonomy_path: str | None = None
    lexical_dir: str | None = None

    ocr_url: str | None = None
    text_classifier_url: str | None = None
    icon_classifier_url: str | None = None

    paragraph_prob: float = 0.5
    phrase_sim: float = 0.8
    iou_beta: float = 0.5
    segment_sim: float = 0.8
    min_area_fraction: float = 0.05
    max_area_fraction: float = 0.10
    min_aspect: float = 0.6

    binarize_window: int = 31
    binarize_offset: float = 10.0
    icon_distance_threshold: float = 0.25

    workers: int | None = None
    output_dir: str = "out"

    def __post_init__(self):
        for name, (low, high, low_inc, high_inc) in _RANGES.items():
            value = getattr(self, name)
            if not isinstance(value, (int, float)):
                raise ConfigError(f"{name} must be numeric, got {value!r}")
            if (value < low) or (value == low and not low_inc):
                raise ConfigError(f"{name}={value} below allowed range")
            if high is not None and ((value > high) or (value == high and not high_inc)):
                raise ConfigError(f"{name}={value} above allowed range")
        if self.binarize_window < 3 or self.binarize_window % 2 == 0:
            raise ConfigError("binarize_window must be an odd integer >= 3")
        if self.workers is not None and self.workers < 1:
            raise ConfigError("workers must be >= 1")

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "PipelineConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return cls(**data)

    @classmethod
    def from_file(cls, path: str | Path) -> "PipelineConfig":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_dict(data)

    def to_file(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n",
                              encoding="utf-8")

    def with_env_endpoints(self, env=os.environ) -> "PipelineConfig":
        """Fill unset endpoints from environment variables."""
        updates = {}
        for field_name, var in _ENV_ENDPOINTS.items():
            if getattr(self, field_name) is None and env.get(var):
                updates[field_name] = env[var]
        return dataclasses.replace(self, **updates) if updates else self
