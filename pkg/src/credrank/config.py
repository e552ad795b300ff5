"""Tunables for the credibility engine, loadable from a single JSON file.

Example config file:

    {
      "rho": 2.0,
      "window": 6,
      "period": "month",
      "window_end": null,
      "weights": {"alpha": 0.2, "beta": 0.2, "gamma": 0.2,
                  "delta": 0.1, "theta": 0.1, "vartheta": 0.2},
      "weight_function": "linear",
      "log_base": null,
      "confident_only": true,
      "missing_chunk_mode": "zero",
      "anomaly_include_unrankable": true,
      "domains": null,
      "cleansing": {"min_posts": 50, "media_hosts": null,
                    "remove_non_english": true},
      "lexicon_file": null,
      "sentiment_lexicon_file": null
    }

Nulls mean "use the shipped default". ``domains`` may be an inline array of
labels or a path to a JSON array file.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Callable

from .corpus import CleansingConfig, PERIODS, default_media_hosts, parse_utc
from .errors import ConfigError
from .semantics import DomainRegistry

WEIGHT_NAMES = ("alpha", "beta", "gamma", "delta", "theta", "vartheta")
WEIGHT_FUNCTIONS: dict[str, Callable[[int], float]] = {
    "linear": float,              # w(k) = k: recent chunks weigh more
    "constant": lambda k: 1.0,    # plain average over the window
}
MISSING_CHUNK_MODES = ("zero", "skip")


@dataclass(frozen=True)
class AttributeWeights:
    """Mixing weights for the six credibility attributes.

    Order: follower-friend ratio, domain weight, retweets, likes, replies,
    reply sentiment. They must be non-negative and sum to 1.
    """

    alpha: float = 0.2
    beta: float = 0.2
    gamma: float = 0.2
    delta: float = 0.1
    theta: float = 0.1
    vartheta: float = 0.2

    def __post_init__(self) -> None:
        values = self.as_tuple()
        if any(v < 0 for v in values):
            raise ConfigError(f"attribute weights must be non-negative, got {values}")
        if abs(sum(values) - 1.0) > 1e-9:
            raise ConfigError(
                f"attribute weights must sum to 1 (got {sum(values):.12g}); "
                "the six coefficients form a simplex"
            )

    def as_tuple(self) -> tuple[float, ...]:
        return (self.alpha, self.beta, self.gamma, self.delta, self.theta, self.vartheta)

    @classmethod
    def from_values(cls, values) -> "AttributeWeights":
        values = list(values)
        if len(values) != 6:
            raise ConfigError(f"expected 6 attribute weights, got {len(values)}")
        return cls(*[float(v) for v in values])


@dataclass(frozen=True)
class CredibilityConfig:
    rho: float = 2.0
    window: int = 6
    period: str = "month"
    window_end: datetime | None = None
    weights: AttributeWeights = field(default_factory=AttributeWeights)
    weight_function: str | Callable[[int], float] = "linear"
    log_base: float | None = None          # None = natural log
    confident_only: bool = True
    missing_chunk_mode: str = "zero"       # inactivity decays credibility
    anomaly_include_unrankable: bool = True
    domains: tuple[str, ...] | None = None  # None = shipped registry

    def __post_init__(self) -> None:
        if self.rho < 0:
            raise ConfigError(f"rho must be >= 0, got {self.rho}")
        if self.window < 1:
            raise ConfigError(f"window must be >= 1, got {self.window}")
        if self.period not in PERIODS:
            raise ConfigError(f"period must be one of {PERIODS}, got {self.period!r}")
        if self.log_base is not None and self.log_base <= 1:
            raise ConfigError(f"log_base must be > 1, got {self.log_base}")
        if self.missing_chunk_mode not in MISSING_CHUNK_MODES:
            raise ConfigError(
                f"missing_chunk_mode must be one of {MISSING_CHUNK_MODES}, "
                f"got {self.missing_chunk_mode!r}"
            )
        if isinstance(self.weight_function, str) and self.weight_function not in WEIGHT_FUNCTIONS:
            raise ConfigError(
                f"unknown weight_function {self.weight_function!r}; "
                f"known: {sorted(WEIGHT_FUNCTIONS)}"
            )
        for k in range(1, self.window + 1):
            if self.weight(k) <= 0:
                raise ConfigError(f"weight function must be positive on 1..{self.window}")
        if self.domains is not None:
            object.__setattr__(self, "domains", tuple(self.domains))

    def weight(self, k: int) -> float:
        if callable(self.weight_function):
            return float(self.weight_function(k))
        return WEIGHT_FUNCTIONS[self.weight_function](k)

    def registry(self) -> DomainRegistry:
        if self.domains is None:
            return DomainRegistry.default()
        return DomainRegistry(self.domains)

    def log(self, value: float) -> float:
        if self.log_base is None:
            return math.log(value)
        return math.log(value, self.log_base)


@dataclass(frozen=True)
class AppConfig:
    """Everything the CLI needs: scoring tunables, cleansing rules, data files."""

    credibility: CredibilityConfig = field(default_factory=CredibilityConfig)
    cleansing: CleansingConfig = field(default_factory=CleansingConfig)
    lexicon_file: str | None = None
    sentiment_lexicon_file: str | None = None


def _load_domains(value, base: Path) -> tuple[str, ...] | None:
    if value is None:
        return None
    if isinstance(value, list):
        return tuple(value)
    if isinstance(value, str):
        path = Path(value)
        if not path.is_absolute():
            path = base / path
        return tuple(DomainRegistry.load(path).labels)
    raise ConfigError("'domains' must be null, an array of labels, or a file path")


def load_config(path: str | Path | None) -> AppConfig:
    """Read an AppConfig from JSON; a null path yields all defaults."""
    if path is None:
        return AppConfig()
    path = Path(path)
    try:
        raw = json.loads(path.read_text("utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc.msg}")
    if not isinstance(raw, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")

    known = {
        "rho", "window", "period", "window_end", "weights", "weight_function",
        "log_base", "confident_only", "missing_chunk_mode",
        "anomaly_include_unrankable", "domains", "cleansing",
        "lexicon_file", "sentiment_lexicon_file",
    }
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {unknown}")

    weights_raw = raw.get("weights")
    if weights_raw is None:
        weights = AttributeWeights()
    elif isinstance(weights_raw, dict):
        extra = sorted(set(weights_raw) - set(WEIGHT_NAMES))
        if extra:
            raise ConfigError(f"unknown weight names: {extra}")
        weights = AttributeWeights(**{k: float(v) for k, v in weights_raw.items()})
    elif isinstance(weights_raw, list):
        weights = AttributeWeights.from_values(weights_raw)
    else:
        raise ConfigError("'weights' must be an object or a 6-element array")

    window_end = raw.get("window_end")
    if window_end is not None:
        try:
            window_end = parse_utc(window_end)
        except ValueError as exc:
            raise ConfigError(f"invalid window_end: {exc}")

    try:
        credibility = CredibilityConfig(
            rho=float(raw.get("rho", 2.0)),
            window=int(raw.get("window", 6)),
            period=raw.get("period", "month"),
            window_end=window_end,
            weights=weights,
            weight_function=raw.get("weight_function", "linear"),
            log_base=(None if raw.get("log_base") is None else float(raw["log_base"])),
            confident_only=bool(raw.get("confident_only", True)),
            missing_chunk_mode=raw.get("missing_chunk_mode", "zero"),
            anomaly_include_unrankable=bool(raw.get("anomaly_include_unrankable", True)),
            domains=_load_domains(raw.get("domains"), path.parent),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid config value: {exc}")

    cleansing_raw = raw.get("cleansing") or {}
    if not isinstance(cleansing_raw, dict):
        raise ConfigError("'cleansing' must be an object")
    extra = sorted(set(cleansing_raw) - {"min_posts", "media_hosts", "remove_non_english"})
    if extra:
        raise ConfigError(f"unknown cleansing keys: {extra}")
    media_hosts = cleansing_raw.get("media_hosts")
    cleansing = CleansingConfig(
        min_posts=int(cleansing_raw.get("min_posts", 50)),
        media_hosts=tuple(media_hosts) if media_hosts is not None else default_media_hosts(),
        remove_non_english=bool(cleansing_raw.get("remove_non_english", True)),
    )

    return AppConfig(
        credibility=credibility,
        cleansing=cleansing,
        lexicon_file=raw.get("lexicon_file"),
        sentiment_lexicon_file=raw.get("sentiment_lexicon_file"),
    )


def config_to_json(config: CredibilityConfig) -> dict:
    """JSON-ready mirror of the scoring tunables (for run summaries)."""
    return {
        "rho": config.rho,
        "window": config.window,
        "period": config.period,
        "window_end": None if config.window_end is None else config.window_end.isoformat(),
        "weights": dict(zip(WEIGHT_NAMES, config.weights.as_tuple())),
        "weight_function": (
            config.weight_function if isinstance(config.weight_function, str) else "<callable>"
        ),
        "log_base": config.log_base,
        "confident_only": config.confident_only,
        "missing_chunk_mode": config.missing_chunk_mode,
        "anomaly_include_unrankable": config.anomaly_include_unrankable,
        "domains": None if config.domains is None else list(config.domains),
    }
