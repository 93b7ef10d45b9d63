"""Run configuration: one JSON file, with command-line overrides applied on top."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, fields, replace
from typing import Optional

from .errors import ConfigError
from .router import RoutingThresholds, WorkflowLibrary
from .wpt import WaveletFilter, get_filter


@dataclass(frozen=True)
class BackendSettings:
    base_url: str = "https://api.openai.com/v1"
    model: str = "gpt-4.1"
    temperature: float = 0.0
    max_tokens: int = 2048
    max_retries: int = 3  # total attempts per stage
    backoff_s: float = 0.5  # first retry delay; doubles each retry
    timeout_s: float = 120.0
    concurrency_limit: int = 4

    def __post_init__(self):
        if self.max_retries < 1:
            raise ConfigError("backend.max_retries must be >= 1")
        if self.concurrency_limit < 1:
            raise ConfigError("backend.concurrency_limit must be >= 1")
        if self.max_tokens < 1:
            raise ConfigError("backend.max_tokens must be >= 1")


@dataclass(frozen=True)
class RunConfig:
    filter_name: str = "db4"
    level: int = 4
    thresholds: RoutingThresholds = field(default_factory=RoutingThresholds)
    workflow_library: WorkflowLibrary = field(default_factory=WorkflowLibrary)
    backend: BackendSettings = field(default_factory=BackendSettings)
    target_lang: str = "en"  # used when a segment carries none
    seed: int = 0
    input_path: Optional[str] = None
    output_path: Optional[str] = None

    def __post_init__(self):
        if not 1 <= self.level <= 4:
            raise ConfigError(f"level must lie in [1, 4], got {self.level}")
        try:
            get_filter(self.filter_name)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    @property
    def filter(self) -> WaveletFilter:
        return get_filter(self.filter_name)

    @classmethod
    def from_json(cls, obj: dict) -> "RunConfig":
        try:
            backend_keys = {f.name for f in fields(BackendSettings)}
            unknown = set(obj.get("backend", {})) - backend_keys
            if unknown:
                raise ConfigError(f"unknown backend keys: {', '.join(sorted(unknown))}")
            return cls(
                filter_name=obj.get("filter", "db4"),
                level=int(obj.get("level", 4)),
                thresholds=RoutingThresholds.from_json(obj.get("thresholds", {})),
                workflow_library=(
                    WorkflowLibrary.from_json(obj["workflows"]) if "workflows" in obj else WorkflowLibrary()
                ),
                backend=BackendSettings(**obj.get("backend", {})),
                target_lang=obj.get("target_lang", "en"),
                seed=int(obj.get("seed", 0)),
                input_path=obj.get("io", {}).get("input_path"),
                output_path=obj.get("io", {}).get("output_path"),
            )
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid config: {exc}") from exc

    @classmethod
    def load(cls, path) -> "RunConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_json(obj)

    def override(self, **changes) -> "RunConfig":
        """Apply non-None overrides; ``concurrency`` maps onto the backend block."""
        changes = {k: v for k, v in changes.items() if v is not None}
        concurrency = changes.pop("concurrency", None)
        cfg = replace(self, **changes)
        if concurrency is not None:
            cfg = replace(cfg, backend=replace(cfg.backend, concurrency_limit=concurrency))
        return cfg

    def to_json(self) -> dict:
        return {
            "filter": self.filter_name,
            "level": self.level,
            "thresholds": self.thresholds.to_json(),
            "workflows": self.workflow_library.to_json(),
            "backend": {f.name: getattr(self.backend, f.name) for f in fields(BackendSettings)},
            "target_lang": self.target_lang,
            "seed": self.seed,
        }
