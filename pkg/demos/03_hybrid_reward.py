"""Walkthrough: the four-component hybrid reward over whole responses.

Run: python demos/03_hybrid_reward.py
"""

from svgreward import (
    EvalConfig,
    MockScorerClient,
    RewardWeights,
    evaluate_candidate_detailed,
    hybrid_reward,
    semantic_reward,
)
import numpy as np

# Component weights: thought 0.1, render 0.1, semantic 0.6, aesthetic 0.2.
weights = RewardWeights()
print("weights:", weights.as_tuple())

# The aggregation is a plain weighted sum over [0,1] components.
for components in ((1, 1, 1, 1), (1, 1, 0.5, 0.5), (0, 0, 0, 0)):
    print(f"  components {components} -> total {hybrid_reward(components, weights).total}")

# The semantic component is a clamped cosine between embeddings.
u = np.array([0.8, 0.6, 0.0])
print("\nsemantic(identical):", semantic_reward(u, u))
print("semantic(orthogonal):", semantic_reward(np.array([1.0, 0, 0]), np.array([0, 1.0, 0])))
print("semantic(opposed, clamped):", semantic_reward(u, -u))

# End to end with the deterministic mock scorer.
GOOD = """<think>
a) concept sketching: a sun badge
b) canvas planning: viewBox 0 0 100 100
c) shape decomposition: disc plus eight rays
d) coordinate calculation: disc r=25 at center
e) styling and coloring: amber fill
f) final assembly: rays under the disc
</think>
<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 100 100">
  <circle cx="50" cy="50" r="25" fill="orange"/>
  <rect x="47" y="8" width="6" height="16" fill="orange"/>
  <rect x="47" y="76" width="6" height="16" fill="orange"/>
</svg>"""

BROKEN = GOOD.split("</think>")[0] + "</think>\n<svg><oops"

scorer = MockScorerClient()
config = EvalConfig(raster_size=64)
print("\nper-candidate breakdowns (mock scorer):")
for name, response in (("good", GOOD), ("broken svg", BROKEN), ("refusal", "cannot")):
    detail = evaluate_candidate_detailed("a sun badge", response, weights, scorer, config)
    b = detail.breakdown
    print(
        f"  {name:11s} think={b.r_think:.1f} render={b.r_render:.1f} "
        f"semantic={b.r_semantic:.3f} aesthetic={b.r_aesthetic:.3f} "
        f"total={b.total:.4f}"
    )
