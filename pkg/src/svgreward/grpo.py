"""Group-relative policy-optimization math over caller-supplied
log-probabilities. No model lives here: inputs are per-token log-probs of
the same trajectories under the new, old, and reference policies, plus one
scalar reward per trajectory.

Conventions:
  * advantages standardize rewards within the group using the population
    standard deviation plus a small stabilizer delta
  * one advantage per response, broadcast uniformly over its tokens
  * the objective averages per token within a response, then across the
    group, so long responses do not dominate
  * KL uses the non-negative per-token estimator exp(d) - d - 1 with
    d = logp_ref - logp_new
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateGroupError,
    EmptySequenceError,
    InputFormatError,
    LengthMismatchError,
)


@dataclass(frozen=True)
class GrpoConfig:
    group_size: int = 8
    clip_epsilon: float = 0.2
    kl_beta: float = 0.01
    advantage_delta: float = 1e-4
    ema_decay: float = 0.99

    def __post_init__(self):
        if self.group_size < 2:
            raise ValueError("group_size must be at least 2")
        if not 0.0 < self.clip_epsilon < 1.0:
            raise ValueError("clip_epsilon must lie in (0, 1)")
        if self.kl_beta < 0.0:
            raise ValueError("kl_beta must be non-negative")
        if self.advantage_delta <= 0.0:
            raise ValueError("advantage_delta must be positive")
        if not 0.0 <= self.ema_decay <= 1.0:
            raise ValueError("ema_decay must lie in [0, 1]")


def as_token_logprobs(values) -> np.ndarray:
    """Validate and convert a per-token log-probability sequence."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError("token log-probs must be a 1-D sequence")
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError("token log-probs must be finite")
    if arr.size and np.any(arr > 0):
        raise ValueError("token log-probs must be <= 0")
    return arr


@dataclass
class GroupSample:
    """One candidate trajectory: reward plus three aligned log-prob tracks."""

    reward: float
    logp_new: np.ndarray
    logp_old: np.ndarray
    logp_ref: np.ndarray

    def __post_init__(self):
        self.logp_new = as_token_logprobs(self.logp_new)
        self.logp_old = as_token_logprobs(self.logp_old)
        self.logp_ref = as_token_logprobs(self.logp_ref)
        n = self.logp_new.size
        if self.logp_old.size != n or self.logp_ref.size != n:
            raise LengthMismatchError(
                "logp_new, logp_old, logp_ref must have equal length "
                f"(got {n}, {self.logp_old.size}, {self.logp_ref.size})"
            )
        if n == 0:
            raise EmptySequenceError("a sample needs at least one token")


@dataclass
class GrpoStepResult:
    advantages: np.ndarray
    per_token_surrogate: list[np.ndarray] = field(default_factory=list)
    per_token_kl: list[np.ndarray] = field(default_factory=list)
    objective: float = 0.0


def group_advantages(rewards, delta: float) -> np.ndarray:
    """Standardized group advantages: (r - mean) / (population std + delta).

    All-equal rewards give exact zeros; with delta = 0 that case is instead
    a DegenerateGroupError.
    """
    r = np.asarray(rewards, dtype=float)
    if r.ndim != 1 or r.size < 2:
        raise ValueError("advantage normalization needs a group of >= 2 rewards")
    if delta < 0:
        raise ValueError("delta must be non-negative")
    if np.all(r == r[0]):
        if delta == 0:
            raise DegenerateGroupError(
                "all rewards equal and delta = 0: advantages undefined"
            )
        return np.zeros_like(r)
    mean = r.mean()
    std = r.std()  # population convention (divide by G)
    return (r - mean) / (std + delta)


def probability_ratio(logp_new, logp_old) -> np.ndarray:
    """Per-token importance ratios exp(logp_new - logp_old)."""
    new = np.asarray(logp_new, dtype=float)
    old = np.asarray(logp_old, dtype=float)
    if new.shape != old.shape:
        raise LengthMismatchError(
            f"log-prob lengths differ: {new.shape} vs {old.shape}"
        )
    return np.exp(new - old)


def clipped_surrogate(ratios, advantage: float, epsilon: float) -> np.ndarray:
    """min(r * A, clip(r, 1-eps, 1+eps) * A), elementwise."""
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must lie in (0, 1)")
    r = np.asarray(ratios, dtype=float)
    unclipped = r * advantage
    clipped = np.clip(r, 1.0 - epsilon, 1.0 + epsilon) * advantage
    return np.minimum(unclipped, clipped)


def kl_estimate(logp_new, logp_ref) -> np.ndarray:
    """Non-negative per-token KL estimate exp(d) - d - 1, d = ref - new."""
    new = np.asarray(logp_new, dtype=float)
    ref = np.asarray(logp_ref, dtype=float)
    if new.shape != ref.shape:
        raise LengthMismatchError(
            f"log-prob lengths differ: {new.shape} vs {ref.shape}"
        )
    d = ref - new
    return np.maximum(np.expm1(d) - d, 0.0)


def grpo_objective(group: list[GroupSample], config: GrpoConfig) -> GrpoStepResult:
    """Full objective over one group, with all intermediates.

    objective = mean_k mean_t surrogate  -  beta * mean_k mean_t kl
    """
    if len(group) == 0:
        raise EmptySequenceError("empty group")
    if len(group) != config.group_size:
        raise LengthMismatchError(
            f"group has {len(group)} samples, config.group_size is "
            f"{config.group_size}"
        )
    rewards = [sample.reward for sample in group]
    advantages = group_advantages(rewards, config.advantage_delta)

    per_token_surrogate: list[np.ndarray] = []
    per_token_kl: list[np.ndarray] = []
    surrogate_means = np.empty(len(group))
    kl_means = np.empty(len(group))
    for k, sample in enumerate(group):
        ratios = probability_ratio(sample.logp_new, sample.logp_old)
        surrogate = clipped_surrogate(ratios, advantages[k], config.clip_epsilon)
        kl = kl_estimate(sample.logp_new, sample.logp_ref)
        per_token_surrogate.append(surrogate)
        per_token_kl.append(kl)
        surrogate_means[k] = surrogate.mean()
        kl_means[k] = kl.mean()

    objective = float(surrogate_means.mean() - config.kl_beta * kl_means.mean())
    return GrpoStepResult(
        advantages=advantages,
        per_token_surrogate=per_token_surrogate,
        per_token_kl=per_token_kl,
        objective=objective,
    )


def ema_update(reference, policy, decay: float) -> np.ndarray:
    """decay * reference + (1 - decay) * policy, elementwise."""
    if not 0.0 <= decay <= 1.0:
        raise ValueError("decay must lie in [0, 1]")
    ref = np.asarray(reference, dtype=float)
    pol = np.asarray(policy, dtype=float)
    if ref.shape != pol.shape:
        raise LengthMismatchError(f"length mismatch: {ref.shape} vs {pol.shape}")
    return decay * ref + (1.0 - decay) * pol


def sft_nll(logp) -> float:
    """Negative log-likelihood of a token sequence: -sum of log-probs."""
    arr = as_token_logprobs(logp)
    if arr.size == 0:
        raise EmptySequenceError("cannot take NLL of an empty sequence")
    return float(-math.fsum(arr.tolist()))


def read_groups_jsonl(path) -> dict[str, list[GroupSample]]:
    """Load grouped samples from JSONL.

    Each line: {"group_id": ..., "reward": float, "logp_new": [...],
    "logp_old": [...], "logp_ref": [...]}. Groups keep first-seen order.
    """
    groups: dict[str, list[GroupSample]] = {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for line_no, line in enumerate(handle, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise InputFormatError(
                        f"{path}:{line_no}: invalid JSON: {exc}"
                    ) from exc
                try:
                    group_id = str(obj["group_id"])
                    sample = GroupSample(
                        reward=float(obj["reward"]),
                        logp_new=obj["logp_new"],
                        logp_old=obj["logp_old"],
                        logp_ref=obj["logp_ref"],
                    )
                except (KeyError, TypeError, ValueError, LengthMismatchError,
                        EmptySequenceError) as exc:
                    raise InputFormatError(f"{path}:{line_no}: {exc}") from exc
                groups.setdefault(group_id, []).append(sample)
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    if not groups:
        raise InputFormatError(f"{path}: no samples found")
    return groups
