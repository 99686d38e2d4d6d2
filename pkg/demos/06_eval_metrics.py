"""Walkthrough: corpus metrics - rates, Frechet distance, raster similarity.

Run: python demos/06_eval_metrics.py
"""

import numpy as np

from svgreward import (
    CandidateRecord,
    FeatureSet,
    aggregate_report,
    check_renderable,
    count_complexity,
    fid,
    parse_svg,
    raster_similarity,
)

# Frechet distance between two Gaussian fits of feature clouds.
rng = np.random.default_rng(42)
reference = FeatureSet(rng.normal(size=(400, 16)), "reference icons")
matched = FeatureSet(rng.normal(size=(400, 16)), "well matched")
shifted = FeatureSet(rng.normal(loc=0.8, size=(400, 16)), "mean shifted")
print("fid(reference, matched): ", f"{fid(reference, matched):8.4f}")
print("fid(reference, shifted): ", f"{fid(reference, shifted):8.4f}")
print("fid(reference, reference):", f"{fid(reference, reference):.2e}")

# Raster similarity between a drawing and a perturbed variant.
base_svg = (
    '<svg viewBox="0 0 100 100"><rect x="10" y="10" width="80" height="80" '
    'fill="navy"/><circle cx="50" cy="50" r="25" fill="gold"/></svg>'
)
moved_svg = base_svg.replace('cx="50"', 'cx="56"')
a = check_renderable(base_svg, 64).raster
b = check_renderable(moved_svg, 64).raster
sim = raster_similarity(a, b)
print("\nraster similarity (disc nudged 6 units):")
print(f"  mse={sim['mse']:.5f}  psnr={sim['psnr']:.2f} dB  ssim={sim['ssim']:.4f}")
self_sim = raster_similarity(a, a)
print(f"  self: mse={self_sim['mse']}  psnr={self_sim['psnr']}  ssim={self_sim['ssim']}")

# The corpus report folds verdicts, coverage flags, and complexities.
svgs = [base_svg, moved_svg, "<svg><broken"]
records = []
for text in svgs:
    verdict = check_renderable(text, 64)
    complexity = None
    if verdict.renderable:
        complexity = count_complexity(parse_svg(text))
    records.append(
        CandidateRecord(
            renderable=verdict.renderable,
            structurally_valid=verdict.renderable,  # stand-in flags for the demo
            semantic=0.31 if verdict.renderable else 0.0,
            aesthetic=0.54 if verdict.renderable else 0.0,
            complexity=complexity,
            svg_text=text if verdict.renderable else None,
        )
    )
report = aggregate_report(records, reference, shifted)
print("\naggregate report:")
for key, value in sorted(report.to_dict().items()):
    print(f"  {key}: {value}")
