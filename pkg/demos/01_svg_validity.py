"""Walkthrough: parsing SVG text, rasterizing it, and deciding validity.

Run: python demos/01_svg_validity.py
"""

import numpy as np

from svgreward import check_renderable, count_complexity, parse_svg, render_raster

CAMERA = """\
<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 100 100">
  <circle cx="50" cy="50" r="40" fill="#d33"/>
  <rect x="42" y="20" width="16" height="12" fill="#333"/>
  <path d="M30 70 Q50 90 70 70" fill="none" stroke="#333" stroke-width="3"/>
</svg>
"""

# Parse: the document model keeps the element tree and the viewBox.
doc = parse_svg(CAMERA)
print("root:", doc.root_tag, "| viewBox:", doc.view_box)
print("children:", [child.local_tag for child in doc.root.children])

# Rasterize at any pixel size; the viewBox is stretched axis by axis.
img = render_raster(doc, 64, 64)
print("raster:", img.width, "x", img.height, "RGBA")
opaque = np.count_nonzero(img.pixels[..., 3])
print(f"opaque pixels: {opaque} / {img.width * img.height}")

# Validity folds parse + render + the empty-canvas rule into one verdict.
samples = {
    "camera icon": CAMERA,
    "malformed": "<svg><unclosed",
    "wrong root": "<div><p/></div>",
    "blank canvas": '<svg viewBox="0 0 100 100"></svg>',
    "uniform flood": '<svg viewBox="0 0 1 1"><rect width="1" height="1" fill="red"/></svg>',
}
print("\nverdicts:")
for name, text in samples.items():
    verdict = check_renderable(text, raster_size=64)
    stage = verdict.failure_stage.value if verdict.failure_stage else "-"
    print(f"  {name:14s} renderable={str(verdict.renderable):5s} stage={stage}")

# Structural complexity: path commands (implicit repeats included) + primitives.
report = count_complexity(doc)
print(
    f"\ncomplexity: {report.path_command_count} path commands"
    f" + {report.primitive_count} primitives = {report.total}"
)
