"""Run configuration: INI-style file with sections, flag overrides, and the
scorer-url environment variable.

Example file:

    [weights]
    think = 0.1
    render = 0.1
    semantic = 0.6
    aesthetic = 0.2

    [grpo]
    group_size = 8
    clip_epsilon = 0.2
    kl_beta = 0.01
    advantage_delta = 1e-4
    ema_decay = 0.99

    [think]
    mode = binary
    require_order = true

    [scorer]
    mode = mock
    embed_dim = 64

    [render]
    raster_size = 256

    [filter]
    consistency_threshold = 0.8
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field

from .dwt import ThinkRewardConfig, ThinkRewardMode
from .errors import InputFormatError
from .grpo import GrpoConfig
from .pipeline import DEFAULT_CONSISTENCY_THRESHOLD
from .reward import RewardWeights
from .scorer import DEFAULT_EMBED_DIM
from .svg import DEFAULT_RASTER_SIZE

SCORER_URL_ENV = "SVGREWARD_SCORER_URL"

_KNOWN_KEYS = {
    "weights": {"think", "render", "semantic", "aesthetic"},
    "grpo": {"group_size", "clip_epsilon", "kl_beta", "advantage_delta", "ema_decay"},
    "think": {"mode", "require_order"},
    "scorer": {"mode", "url", "embed_dim"},
    "render": {"raster_size"},
    "filter": {"consistency_threshold"},
}


@dataclass
class CliConfig:
    weights: RewardWeights = field(default_factory=RewardWeights)
    grpo: GrpoConfig = field(default_factory=GrpoConfig)
    think: ThinkRewardConfig = field(default_factory=ThinkRewardConfig)
    scorer_mode: str = "mock"
    scorer_url: str | None = None
    embed_dim: int = DEFAULT_EMBED_DIM
    raster_size: int = DEFAULT_RASTER_SIZE
    consistency_threshold: float = DEFAULT_CONSISTENCY_THRESHOLD

    def __post_init__(self):
        if self.scorer_mode not in ("mock", "remote"):
            raise InputFormatError(
                f"scorer mode must be 'mock' or 'remote', got {self.scorer_mode!r}"
            )
        if self.scorer_mode == "remote" and not self.scorer_url:
            raise InputFormatError("remote scorer mode requires a scorer url")
        if self.raster_size <= 0:
            raise InputFormatError("raster_size must be positive")
        # values above 1 are allowed as an explicitly unreachable threshold
        if self.consistency_threshold < 0.0:
            raise InputFormatError("consistency_threshold must be non-negative")


def _read_file(path: str) -> dict[str, dict[str, str]]:
    parser = configparser.ConfigParser()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            parser.read_file(handle)
    except OSError as exc:
        raise InputFormatError(f"cannot read config {path}: {exc}") from exc
    except configparser.Error as exc:
        raise InputFormatError(f"invalid config {path}: {exc}") from exc
    sections: dict[str, dict[str, str]] = {}
    for section in parser.sections():
        if section not in _KNOWN_KEYS:
            raise InputFormatError(f"{path}: unknown config section [{section}]")
        for key in parser[section]:
            if key not in _KNOWN_KEYS[section]:
                raise InputFormatError(
                    f"{path}: unknown key {key!r} in section [{section}]"
                )
        sections[section] = dict(parser[section])
    return sections


def _to_float(raw: str, context: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise InputFormatError(f"{context}: expected a number, got {raw!r}") from None


def _to_int(raw: str, context: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise InputFormatError(f"{context}: expected an integer, got {raw!r}") from None


def _to_bool(raw: str, context: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise InputFormatError(f"{context}: expected a boolean, got {raw!r}")


def load_config(path: str | None = None, overrides: dict | None = None) -> CliConfig:
    """Build the run configuration.

    Precedence, lowest to highest: built-in defaults, config file, the
    SVGREWARD_SCORER_URL environment variable, then explicit overrides
    (command-line flags). Passing any override with value None is a no-op.
    """
    sections = _read_file(path) if path else {}
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}

    def pick(section: str, key: str, default):
        return sections.get(section, {}).get(key, default)

    defaults = RewardWeights()
    weight_values = {
        "think": _to_float(
            str(pick("weights", "think", defaults.lambda_think)), "weights.think"
        ),
        "render": _to_float(
            str(pick("weights", "render", defaults.lambda_render)), "weights.render"
        ),
        "semantic": _to_float(
            str(pick("weights", "semantic", defaults.lambda_semantic)),
            "weights.semantic",
        ),
        "aesthetic": _to_float(
            str(pick("weights", "aesthetic", defaults.lambda_aesthetic)),
            "weights.aesthetic",
        ),
    }
    for name in weight_values:
        flag = overrides.pop(f"weights_{name}", None)
        if flag is not None:
            weight_values[name] = float(flag)
    try:
        weights = RewardWeights(
            lambda_think=weight_values["think"],
            lambda_render=weight_values["render"],
            lambda_semantic=weight_values["semantic"],
            lambda_aesthetic=weight_values["aesthetic"],
        )
    except ValueError as exc:
        raise InputFormatError(f"invalid reward weights: {exc}") from exc

    try:
        grpo = GrpoConfig(
            group_size=_to_int(str(pick("grpo", "group_size", 8)), "grpo.group_size"),
            clip_epsilon=_to_float(
                str(pick("grpo", "clip_epsilon", 0.2)), "grpo.clip_epsilon"
            ),
            kl_beta=_to_float(str(pick("grpo", "kl_beta", 0.01)), "grpo.kl_beta"),
            advantage_delta=_to_float(
                str(pick("grpo", "advantage_delta", 1e-4)), "grpo.advantage_delta"
            ),
            ema_decay=_to_float(
                str(pick("grpo", "ema_decay", 0.99)), "grpo.ema_decay"
            ),
        )
    except ValueError as exc:
        raise InputFormatError(f"invalid grpo config: {exc}") from exc

    mode_raw = str(pick("think", "mode", "binary")).strip().lower()
    if mode_raw not in ("binary", "partial"):
        raise InputFormatError(f"think.mode must be binary or partial, got {mode_raw!r}")
    think = ThinkRewardConfig(
        mode=ThinkRewardMode(mode_raw),
        require_order=_to_bool(
            str(pick("think", "require_order", "true")), "think.require_order"
        ),
    )

    scorer_mode = str(pick("scorer", "mode", "mock")).strip().lower()
    scorer_url = pick("scorer", "url", None)
    env_url = os.environ.get(SCORER_URL_ENV)
    if env_url:
        scorer_url = env_url
    flag_url = overrides.pop("scorer_url", None)
    if flag_url is not None:
        scorer_url = flag_url
        scorer_mode = "remote"
    if overrides.pop("mock", False):  # --mock beats any url source
        scorer_mode = "mock"

    raster_size = _to_int(
        str(pick("render", "raster_size", DEFAULT_RASTER_SIZE)), "render.raster_size"
    )
    flag_raster = overrides.pop("raster_size", None)
    if flag_raster is not None:
        raster_size = int(flag_raster)

    threshold = _to_float(
        str(pick("filter", "consistency_threshold", DEFAULT_CONSISTENCY_THRESHOLD)),
        "filter.consistency_threshold",
    )
    flag_threshold = overrides.pop("threshold", None)
    if flag_threshold is not None:
        threshold = float(flag_threshold)

    embed_dim = _to_int(
        str(pick("scorer", "embed_dim", DEFAULT_EMBED_DIM)), "scorer.embed_dim"
    )

    if overrides:
        raise InputFormatError(f"unknown overrides: {sorted(overrides)}")
    return CliConfig(
        weights=weights,
        grpo=grpo,
        think=think,
        scorer_mode=scorer_mode,
        scorer_url=scorer_url,
        embed_dim=embed_dim,
        raster_size=raster_size,
        consistency_threshold=threshold,
    )
