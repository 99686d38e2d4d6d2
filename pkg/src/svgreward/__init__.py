"""Reward computation, group-relative RL math, and evaluation metrics for
reasoning-driven SVG generation.

The package splits into:
  svg       parsing, rasterization, render-validity, complexity counting
  dwt       response splitting and six-stage reasoning-trace analysis
  reward    the four-component hybrid reward and candidate evaluation
  grpo      group advantages, clipped surrogate, KL penalty, EMA, NLL
  metrics   corpus metrics: validity/coverage rates, FID, SSIM/PSNR/MSE
  pipeline  the generate-render-verify corpus filter and statistics
  scorer    neural-scorer client contract with a deterministic mock
  cli       `svgreward` command wiring everything together
"""

from .dwt import (
    DwtTrace,
    ResponseParts,
    StageKind,
    ThinkRewardConfig,
    ThinkRewardMode,
    parse_trace,
    split_response,
    structural_validity,
    think_reward,
    trace_for,
)
from .grpo import (
    GroupSample,
    GrpoConfig,
    GrpoStepResult,
    clipped_surrogate,
    ema_update,
    group_advantages,
    grpo_objective,
    kl_estimate,
    probability_ratio,
    sft_nll,
)
from .metrics import (
    CandidateRecord,
    EvalReport,
    FeatureSet,
    aggregate_report,
    dwt_cover_rate,
    fid,
    mean_complexity,
    raster_similarity,
    ssim,
    validity_rate,
)
from .pipeline import (
    CorpusStats,
    DomainTag,
    FilterVerdict,
    RejectionStage,
    Triplet,
    corpus_stats,
    filter_triplet,
)
from .reward import (
    CandidateEvaluation,
    EvalConfig,
    RewardBreakdown,
    RewardWeights,
    evaluate_candidate,
    evaluate_candidate_detailed,
    hybrid_reward,
    semantic_reward,
)
from .scorer import MockScorerClient, RemoteScorerClient, ScorerClient, fnv1a64
from .svg import (
    ComplexityReport,
    FailureStage,
    RasterImage,
    RenderVerdict,
    SvgDocument,
    SvgElement,
    check_renderable,
    count_complexity,
    parse_svg,
    render_raster,
)

__version__ = "0.1.0"
