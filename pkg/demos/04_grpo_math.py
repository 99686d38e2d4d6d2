"""Walkthrough: the group-relative policy-optimization math kernel.

Everything operates on logged per-token log-probabilities; no model runs.

Run: python demos/04_grpo_math.py
"""

import math

import numpy as np

from svgreward import (
    GroupSample,
    GrpoConfig,
    clipped_surrogate,
    ema_update,
    group_advantages,
    grpo_objective,
    kl_estimate,
    probability_ratio,
    sft_nll,
)

# 1. Group advantages: standardize rewards within a sampled group.
rewards = [0.92, 0.55, 0.55, 0.13]
advantages = group_advantages(rewards, delta=1e-4)
print("rewards:   ", rewards)
print("advantages:", np.round(advantages, 4), "| mean:", f"{advantages.mean():+.1e}")

# 2. Importance ratios from new/old token log-probs.
logp_new = np.array([-0.40, -1.10, -0.20])
logp_old = np.array([-0.55, -1.10, -0.35])
ratios = probability_ratio(logp_new, logp_old)
print("\nratios:", np.round(ratios, 4))

# 3. Clipped surrogate: min of unclipped and ratio-clipped terms.
for ratio, advantage in ((1.0, 0.5), (1.5, 1.0), (0.5, -1.0)):
    value = clipped_surrogate(np.array([ratio]), advantage, epsilon=0.2)[0]
    print(f"  ratio {ratio:3.1f}, advantage {advantage:+.1f} -> {value:+.2f}")

# 4. Per-token KL estimate toward the reference policy (always >= 0).
logp_ref = np.array([-0.50, -1.10, -0.10])
kl = kl_estimate(logp_new, logp_ref)
print("\nkl per token:", np.round(kl, 5))

# 5. The full objective over a group: token means, then the group mean,
#    minus the KL penalty.
group = [
    GroupSample(0.9, [-0.2, -0.3], [-0.25, -0.3], [-0.2, -0.35]),
    GroupSample(0.4, [-0.5, -0.6, -0.7], [-0.5, -0.55, -0.7], [-0.6, -0.6, -0.7]),
    GroupSample(0.1, [-1.0], [-0.9], [-1.1]),
]
config = GrpoConfig(group_size=3, clip_epsilon=0.2, kl_beta=0.01)
step = grpo_objective(group, config)
print("\nobjective:", f"{step.objective:.6f}")
print("advantages:", np.round(step.advantages, 4))

# 6. Reference-policy refresh by exponential moving average.
reference = np.zeros(4)
policy = np.array([1.0, 2.0, 3.0, 4.0])
print("\nema(decay=0.99):", ema_update(reference, policy, 0.99))

# 7. Supervised NLL of a token sequence (sum over tokens).
print("nll of two ln(1/2) tokens:", sft_nll([math.log(0.5)] * 2))
