"""Hybrid reward: four components, normalization, and aggregation.

total = w_think * r_think + w_render * r_render
      + w_semantic * r_semantic + w_aesthetic * r_aesthetic

All components are normalized to [0, 1] before summation: the semantic
cosine is clamped at zero (unrelated and opposed images score alike) and
the aesthetic scorer contractually returns [0, 1]. Candidates whose SVG
cannot be rendered get zero semantic and aesthetic components because no
raster exists to score.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dwt import (
    DwtTrace,
    ResponseParts,
    ThinkRewardConfig,
    split_response,
    structural_validity,
    think_reward,
    trace_for,
)
from .errors import (
    ComponentOutOfRangeError,
    DimensionMismatchError,
    NonSvgRootError,
    ParseError,
    ZeroVectorError,
)
from .scorer import ScorerClient
from .svg import (
    DEFAULT_RASTER_SIZE,
    ComplexityReport,
    FailureStage,
    RenderVerdict,
    check_renderable,
    count_complexity,
    parse_svg,
)

# Default component weights: thought 0.1, render 0.1, semantic 0.6,
# aesthetic 0.2. They sum to 1 so totals stay in [0, 1].
DEFAULT_WEIGHTS = (0.1, 0.1, 0.6, 0.2)


@dataclass(frozen=True)
class RewardWeights:
    lambda_think: float = DEFAULT_WEIGHTS[0]
    lambda_render: float = DEFAULT_WEIGHTS[1]
    lambda_semantic: float = DEFAULT_WEIGHTS[2]
    lambda_aesthetic: float = DEFAULT_WEIGHTS[3]

    def __post_init__(self):
        values = self.as_tuple()
        if any(not math.isfinite(v) or v < 0 for v in values):
            raise ValueError("reward weights must be finite and non-negative")
        if all(v == 0 for v in values):
            raise ValueError("at least one reward weight must be positive")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (
            self.lambda_think,
            self.lambda_render,
            self.lambda_semantic,
            self.lambda_aesthetic,
        )

    def scaled(self, factor: float) -> "RewardWeights":
        return RewardWeights(*(factor * v for v in self.as_tuple()))


@dataclass(frozen=True)
class RewardBreakdown:
    r_think: float
    r_render: float
    r_semantic: float
    r_aesthetic: float
    total: float
    weights_used: RewardWeights

    def components(self) -> tuple[float, float, float, float]:
        return (self.r_think, self.r_render, self.r_semantic, self.r_aesthetic)


def semantic_reward(image_emb: np.ndarray, text_emb: np.ndarray) -> float:
    """Clamped cosine similarity of two embeddings, in [0, 1]."""
    u = np.asarray(image_emb, dtype=float).ravel()
    v = np.asarray(text_emb, dtype=float).ravel()
    if u.shape != v.shape:
        raise DimensionMismatchError(
            f"embedding dims differ: {u.shape[0]} vs {v.shape[0]}"
        )
    norm_u = float(np.linalg.norm(u))
    norm_v = float(np.linalg.norm(v))
    if norm_u < 1e-12 or norm_v < 1e-12:
        raise ZeroVectorError("cannot take cosine of a zero vector")
    cosine = float(np.dot(u / norm_u, v / norm_v))
    cosine = max(-1.0, min(1.0, cosine))
    return max(0.0, cosine)


def _check_component(name: str, value: float, binary: bool = False) -> float:
    value = float(value)
    if not math.isfinite(value) or not 0.0 <= value <= 1.0:
        raise ComponentOutOfRangeError(f"{name}={value} outside [0, 1]")
    if binary and value not in (0.0, 1.0):
        raise ComponentOutOfRangeError(f"{name}={value} must be exactly 0 or 1")
    return value


def hybrid_reward(components, weights: RewardWeights = RewardWeights()) -> RewardBreakdown:
    """Aggregate (r_think, r_render, r_semantic, r_aesthetic) into the total.

    math.fsum keeps the weighted sum exact enough that unit components with
    the default weights give exactly 1.0.
    """
    r_think, r_render, r_semantic, r_aesthetic = components
    r_think = _check_component("r_think", r_think)
    r_render = _check_component("r_render", r_render, binary=True)
    r_semantic = _check_component("r_semantic", r_semantic)
    r_aesthetic = _check_component("r_aesthetic", r_aesthetic)
    w = weights.as_tuple()
    total = math.fsum(
        (w[0] * r_think, w[1] * r_render, w[2] * r_semantic, w[3] * r_aesthetic)
    )
    return RewardBreakdown(
        r_think=r_think,
        r_render=r_render,
        r_semantic=r_semantic,
        r_aesthetic=r_aesthetic,
        total=total,
        weights_used=weights,
    )


@dataclass(frozen=True)
class EvalConfig:
    raster_size: int = DEFAULT_RASTER_SIZE
    think: ThinkRewardConfig = field(default_factory=ThinkRewardConfig)


@dataclass
class CandidateEvaluation:
    """Everything the corpus metrics need about one scored response."""

    breakdown: RewardBreakdown
    parts: ResponseParts
    trace: DwtTrace
    verdict: RenderVerdict
    structurally_valid: bool
    complexity: ComplexityReport | None


def evaluate_candidate_detailed(
    prompt: str,
    response_text: str,
    weights: RewardWeights,
    scorer: ScorerClient,
    config: EvalConfig = EvalConfig(),
) -> CandidateEvaluation:
    parts = split_response(response_text)
    trace = trace_for(parts)
    r_think = think_reward(parts, trace, config.think)

    if parts.svg_text is None:
        verdict = RenderVerdict(
            False, FailureStage.PARSE_ERROR, detail="no complete svg element"
        )
    else:
        verdict = check_renderable(parts.svg_text, config.raster_size)

    complexity: ComplexityReport | None = None
    if parts.svg_text is not None:
        try:
            complexity = count_complexity(parse_svg(parts.svg_text))
        except (ParseError, NonSvgRootError):
            complexity = None

    if verdict.renderable:
        r_render = 1.0
        image_emb = scorer.embed_image(verdict.raster)
        text_emb = scorer.embed_text(prompt)
        r_semantic = semantic_reward(image_emb, text_emb)
        r_aesthetic = scorer.aesthetic(verdict.raster, prompt)
    else:
        r_render = 0.0
        r_semantic = 0.0
        r_aesthetic = 0.0

    breakdown = hybrid_reward((r_think, r_render, r_semantic, r_aesthetic), weights)
    return CandidateEvaluation(
        breakdown=breakdown,
        parts=parts,
        trace=trace,
        verdict=verdict,
        structurally_valid=structural_validity(parts, trace),
        complexity=complexity,
    )


def evaluate_candidate(
    prompt: str,
    response_text: str,
    weights: RewardWeights,
    scorer: ScorerClient,
    config: EvalConfig = EvalConfig(),
) -> RewardBreakdown:
    """Score one response end to end; see evaluate_candidate_detailed."""
    return evaluate_candidate_detailed(
        prompt, response_text, weights, scorer, config
    ).breakdown
