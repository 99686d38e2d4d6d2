"""Walkthrough: splitting responses and scoring the reasoning structure.

Run: python demos/02_dwt_traces.py
"""

from svgreward import (
    StageKind,
    ThinkRewardConfig,
    ThinkRewardMode,
    split_response,
    structural_validity,
    think_reward,
    trace_for,
)

RESPONSE = """<think>
a) Concept Sketching: a paper plane gliding right, one fold line visible.
b) Canvas Planning: viewBox 0 0 100 100, plane occupies the middle 60%.
c) Shape Decomposition: two triangles for wings, one thin triangle for the fold.
d) Coordinate Calculation: nose at (85,50); tail corners at (15,30) and (15,70).
e) Styling and Coloring: white fill, slate stroke, no gradients.
f) Final Assembly: draw the lower wing, the fold shadow, then the top wing.
</think>
<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 100 100">
  <polygon points="85,50 15,30 35,50" fill="#fff" stroke="#345" stroke-width="2"/>
  <polygon points="85,50 15,70 35,50" fill="#dde" stroke="#345" stroke-width="2"/>
</svg>"""

parts = split_response(RESPONSE)
print("think block present:", parts.think_text is not None)
print("svg present:", parts.svg_text is not None)

trace = trace_for(parts)
print("\nstages found:", trace.stage_count, "| canonical order:", trace.ordered)
for stage in StageKind:
    span = trace.stages_present[stage]
    head = " ".join(span.split())[:48] if span else "(absent)"
    print(f"  {stage.value:24s} {head}")

binary = ThinkRewardConfig(ThinkRewardMode.BINARY, require_order=True)
partial = ThinkRewardConfig(ThinkRewardMode.PARTIAL)
print("\nbinary reward:", think_reward(parts, trace, binary))
print("partial reward:", think_reward(parts, trace, partial))
print("structurally valid:", structural_validity(parts, trace))

# Degraded variants show how the two modes react.
print("\ndegraded responses:")
degraded = {
    "three stages": RESPONSE.split("d) Coordinate")[0] + "</think>",
    "no think tag": parts.svg_text,
    "unterminated": "<think>" + (parts.think_text or ""),
}
for name, text in degraded.items():
    p = split_response(text)
    t = trace_for(p)
    print(
        f"  {name:14s} stages={t.stage_count} "
        f"binary={think_reward(p, t, binary):.1f} "
        f"partial={think_reward(p, t, partial):.3f}"
    )
