"""Run configuration: defaults < config file < command-line flags."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from .detectors.registry import METHOD_ORDER, METHODS
from .detectors.strength import DEFAULT_TAU
from .detectors.threshold import DEFAULT_CROP_QUANTILE, DEFAULT_THRESHOLD_QUANTILE
from .errors import ConfigError, ParseError
from .evaluation import IH_MODES


@dataclass(frozen=True)
class RunConfig:
    corpus: tuple[str, ...] = ()
    methods: tuple[str, ...] = METHOD_ORDER
    tau: dict[str, float] = field(default_factory=dict)  # strength method id -> cut
    crop_quantile: float = DEFAULT_CROP_QUANTILE
    threshold_quantile: float = DEFAULT_THRESHOLD_QUANTILE
    n_bootstrap: int = 1000
    seed: int | None = None
    ih_modes: tuple[str, ...] = IH_MODES
    labels: str | None = None
    out_dir: str = "out"

    def validate(self) -> "RunConfig":
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown:
            raise ConfigError(f"unknown method ids in config: {unknown}")
        if not self.methods:
            raise ConfigError("no methods enabled")
        bad_modes = [m for m in self.ih_modes if m not in IH_MODES]
        if bad_modes:
            raise ConfigError(f"unknown ih modes: {bad_modes}; expected {list(IH_MODES)}")
        if not self.ih_modes:
            raise ConfigError("no ih modes enabled")
        if not 0.0 <= self.crop_quantile < self.threshold_quantile <= 1.0:
            raise ConfigError(
                "need 0 <= crop_quantile < threshold_quantile <= 1, got "
                f"{self.crop_quantile} and {self.threshold_quantile}"
            )
        bad_tau = {k: v for k, v in self.tau.items() if k not in METHODS}
        if bad_tau:
            raise ConfigError(f"tau set for unknown methods: {sorted(bad_tau)}")
        for k, v in self.tau.items():
            if not -1.0 <= v <= 1.0:
                raise ConfigError(f"tau for {k} must lie in [-1, 1], got {v}")
        if self.seed is not None and self.seed < 0:
            raise ConfigError("seed must be a non-negative integer")
        if self.n_bootstrap < 100:
            raise ConfigError("n_bootstrap must be >= 100")
        return self

    def require_seed(self) -> int:
        if self.seed is None:
            raise ConfigError("scale-free analysis needs an explicit seed")
        return self.seed


_KNOWN_KEYS = {
    "corpus",
    "methods",
    "tau",
    "crop_quantile",
    "threshold_quantile",
    "n_bootstrap",
    "seed",
    "ih_modes",
    "labels",
    "out_dir",
}


def load_config(path: str | Path) -> RunConfig:
    """Parse a declarative JSON config file into a RunConfig."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError(f"{path}: expected a JSON object")
    unknown = set(raw) - _KNOWN_KEYS
    if unknown:
        raise ConfigError(f"{path}: unknown config keys {sorted(unknown)}")
    kwargs: dict = {}
    if "corpus" in raw:
        kwargs["corpus"] = tuple(str(p) for p in raw["corpus"])
    if "methods" in raw:
        kwargs["methods"] = tuple(str(m) for m in raw["methods"])
    if "tau" in raw:
        kwargs["tau"] = normalize_tau(raw["tau"])
    for key in ("crop_quantile", "threshold_quantile"):
        if key in raw:
            kwargs[key] = float(raw[key])
    if "n_bootstrap" in raw:
        kwargs["n_bootstrap"] = int(raw["n_bootstrap"])
    if "seed" in raw and raw["seed"] is not None:
        kwargs["seed"] = int(raw["seed"])
    if "ih_modes" in raw:
        kwargs["ih_modes"] = tuple(str(m) for m in raw["ih_modes"])
    if "labels" in raw and raw["labels"] is not None:
        kwargs["labels"] = str(raw["labels"])
    if "out_dir" in raw:
        kwargs["out_dir"] = str(raw["out_dir"])
    return RunConfig(**kwargs).validate()


def normalize_tau(value) -> dict[str, float]:
    """Accept a single number (applies to every strength method) or a map."""
    strength_ids = [m for m in METHOD_ORDER if m.startswith("Cl.&")]
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return {m: float(value) for m in strength_ids}
    if isinstance(value, dict):
        return {str(k): float(v) for k, v in value.items()}
    raise ConfigError(f"tau must be a number or a method->number map, got {value!r}")


def apply_overrides(cfg: RunConfig, **overrides) -> RunConfig:
    """Layer non-None flag values over a config (flags win)."""
    updates = {}
    for key, value in overrides.items():
        if value is None:
            continue
        if key == "tau":
            merged = dict(cfg.tau)
            merged.update(value)
            updates["tau"] = merged
        else:
            updates[key] = value
    return replace(cfg, **updates).validate() if updates else cfg.validate()


def effective_tau(cfg: RunConfig, method_id: str) -> float:
    return cfg.tau.get(method_id, DEFAULT_TAU)
