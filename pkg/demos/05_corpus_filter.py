"""Walkthrough: the generate-render-verify corpus filter and its statistics.

Run: python demos/05_corpus_filter.py
"""

from svgreward import DomainTag, MockScorerClient, Triplet, corpus_stats, filter_triplet

DWT = """<think>
a) concept sketching: one bold glyph
b) canvas planning: square viewBox
c) shape decomposition: a disc and a bar
d) coordinate calculation: centered
e) styling and coloring: two flat tones
f) final assembly: bar over disc
</think>"""

corpus = [
    Triplet("t1", "a camera icon", DWT,
            '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 100 100">'
            '<circle cx="50" cy="50" r="40" fill="#d33"/>'
            '<rect x="42" y="20" width="16" height="12" fill="#333"/></svg>',
            DomainTag.ICONOGRAPHY),
    Triplet("t2", "a broken file", DWT, "<svg><unterminated",
            DomainTag.ICONOGRAPHY),
    Triplet("t3", "a blank page", DWT,
            '<svg viewBox="0 0 100 100"></svg>', DomainTag.UI_LAYOUT),
    Triplet("t4", "a flood fill", DWT,
            '<svg viewBox="0 0 1 1"><rect width="1" height="1" fill="red"/></svg>',
            DomainTag.LOGO_EMOJI),
    Triplet("t5", "an unloved icon", DWT,
            '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 10 10">'
            '<rect x="1" y="1" width="5" height="5" fill="teal"/></svg>',
            DomainTag.DIAGRAM),
]

# Stage order is strict: syntax, then rendering (empty canvases are
# discarded), then the scorer's visual-reasoning consistency check.
# The mock scorer rates t1 at 0.702 and t5 at 0.694; a 0.7 threshold
# shows both outcomes of the consistency stage.
scorer = MockScorerClient()
verdicts = [filter_triplet(t, scorer, threshold=0.7) for t in corpus]
for t, v in zip(corpus, verdicts):
    stage = v.rejected_at.value if v.rejected_at else "accepted"
    score = f" score={v.consistency_score:.3f}" if v.consistency_score is not None else ""
    print(f"  {t.id}  {stage:16s}{score}")
print("scorer calls:", scorer.total_calls, "(only stage-3 candidates reach it)")

stats = corpus_stats(corpus, verdicts)
print("\nacceptance rate:", stats.acceptance_rate)
print("domains:", stats.domain_histogram)
print("reasoning-depth buckets:", {k: v for k, v in stats.dwt_token_buckets.items() if v})
