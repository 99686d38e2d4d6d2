"""Reasoning-trace handling: response splitting, six-stage trace parsing,
thought-structure reward, and the structural-validity predicate.

A response is expected to carry an optional ``<think>...</think>`` block
followed by an SVG element. The reasoning inside the think block is matched
against six canonical planning stages (concept sketching, canvas planning,
shape decomposition, coordinate calculation, styling/coloring, final
assembly), each recognized as a heading at the start of a line with an
optional letter/ordinal marker.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field

THINK_OPEN = "<think>"
THINK_CLOSE = "</think>"


class StageKind(enum.Enum):
    CONCEPT_SKETCHING = "concept_sketching"
    CANVAS_PLANNING = "canvas_planning"
    SHAPE_DECOMPOSITION = "shape_decomposition"
    COORDINATE_CALCULATION = "coordinate_calculation"
    STYLING_COLORING = "styling_coloring"
    FINAL_ASSEMBLY = "final_assembly"


CANONICAL_STAGE_ORDER = tuple(StageKind)

# Optional line-start decoration before a stage heading: markdown markers,
# a "stage"/"step" word, and a letter or digit ordinal such as

# "a)", "(c)", "3.", "Stage 2:".
_HEADING_PREFIX = r"""
    ^[ \t]*
    (?:[#>*\-+:]+[ \t]*)?
    (?:\*\*)?
    (?:(?:stage|step|phase)[ \t]*)?
    (?:\(?[a-f1-6]\)?[ \t]*[).:\-][ \t]*|\(?[a-f1-6]\)[ \t]*)?
    (?:\*\*)?[ \t]*
"""

_STAGE_PHRASES = {
    StageKind.CONCEPT_SKETCHING: r"concept[ \t]+sketching",
    StageKind.CANVAS_PLANNING: r"canvas[ \t]+planning",
    StageKind.SHAPE_DECOMPOSITION: r"shape[ \t]+decomposition",
    StageKind.COORDINATE_CALCULATION: r"coordinate[ \t]+calculation",
    # Both "styling and coloring" and "styling & color" occur in the wild.
    StageKind.STYLING_COLORING: r"styling[ \t]*(?:(?:and|&)[ \t]*)?color(?:ing)?",
    StageKind.FINAL_ASSEMBLY: r"final[ \t]+assembly",
}

_STAGE_RES = {
    stage: re.compile(
        _HEADING_PREFIX + phrase,
        re.IGNORECASE | re.MULTILINE | re.VERBOSE,
    )
    for stage, phrase in _STAGE_PHRASES.items()
}


class ThinkRewardMode(enum.Enum):
    BINARY = "binary"
    PARTIAL = "partial"


@dataclass(frozen=True)
class ThinkRewardConfig:
    mode: ThinkRewardMode = ThinkRewardMode.BINARY
    require_order: bool = True


@dataclass
class ResponseParts:
    """Raw spans of one model response.

    think_text is the content strictly between the first matched think
    tags; svg_text is the first complete svg element; everything else is
    trailing_text. An opening think tag without a closing one sets
    unterminated_think and leaves both spans absent.
    """

    think_text: str | None
    svg_text: str | None
    trailing_text: str
    unterminated_think: bool = False


@dataclass
class DwtTrace:
    stages_present: dict[StageKind, str | None] = field(
        default_factory=lambda: {stage: None for stage in StageKind}
    )
    ordered: bool = True
    stage_count: int = 0


def _find_svg_span(text: str, start: int) -> tuple[int, int] | None:
    """Locate the first complete <svg>...</svg> element at or after start."""
    open_re = re.compile(r"<svg(?=[\s>/])")
    first = open_re.search(text, start)
    if first is None:
        return None
    depth = 0
    pos = first.start()
    close_re = re.compile(r"<svg(?=[\s>/])|</svg\s*>")
    while True:
        m = close_re.search(text, pos)
        if m is None:
            return None
        token = m.group()
        if token.startswith("</"):
            depth -= 1
            if depth == 0:
                return (first.start(), m.end())
            pos = m.end()
        else:
            gt = text.find(">", m.end())
            if gt == -1:
                return None
            if text[gt - 1] != "/":
                depth += 1
            pos = gt + 1


def split_response(text: str) -> ResponseParts:
    """Separate a response into think block, first svg element, and the rest.

    Only the first think block counts; later ones stay in trailing_text.
    No byte is lost: think + svg + trailing + tag delimiters reassemble
    the input.
    """
    think_text: str | None = None
    unterminated = False
    spans: list[tuple[int, int]] = []
    svg_search_from = 0

    open_idx = text.find(THINK_OPEN)
    if open_idx != -1:
        close_idx = text.find(THINK_CLOSE, open_idx + len(THINK_OPEN))
        if close_idx == -1:
            unterminated = True
        else:
            think_text = text[open_idx + len(THINK_OPEN):close_idx]
            spans.append((open_idx, close_idx + len(THINK_CLOSE)))
            svg_search_from = close_idx + len(THINK_CLOSE)

    svg_text: str | None = None
    if not unterminated:
        svg_span = _find_svg_span(text, svg_search_from)
        if svg_span is not None:
            svg_text = text[svg_span[0]:svg_span[1]]
            spans.append(svg_span)

    spans.sort()
    trailing_parts = []
    cursor = 0
    for lo, hi in spans:
        trailing_parts.append(text[cursor:lo])
        cursor = hi
    trailing_parts.append(text[cursor:])
    return ResponseParts(
        think_text=think_text,
        svg_text=svg_text,
        trailing_text="".join(trailing_parts),
        unterminated_think=unterminated,
    )


def parse_trace(think_text: str) -> DwtTrace:
    """Detect the six planning stages inside a think block.

    Each stage is present iff its heading matcher fires; the stage span is
    the text between its heading and the next one. Absence is data, not an
    error.
    """
    events: list[tuple[int, int, StageKind]] = []
    for stage, pattern in _STAGE_RES.items():
        m = pattern.search(think_text)
        if m is not None:
            events.append((m.start(), m.end(), stage))
    events.sort()

    trace = DwtTrace()
    for i, (_, end, stage) in enumerate(events):
        span_end = events[i + 1][0] if i + 1 < len(events) else len(think_text)
        trace.stages_present[stage] = think_text[end:span_end]
    canonical = [CANONICAL_STAGE_ORDER.index(stage) for _, _, stage in events]
    trace.ordered = canonical == sorted(canonical)
    trace.stage_count = len(events)
    return trace


def trace_for(parts: ResponseParts) -> DwtTrace:
    """Trace of a response's think block; empty trace when absent."""
    if parts.think_text is None:
        return DwtTrace()
    return parse_trace(parts.think_text)


def think_reward(
    parts: ResponseParts,
    trace: DwtTrace,
    config: ThinkRewardConfig = ThinkRewardConfig(),
) -> float:
    """Thought-structure reward in [0, 1].

    Binary mode pays 1.0 only for a present think block carrying all six
    stages (in order, when require_order). Partial mode pays half for the
    block and half proportionally to stage coverage.
    """
    present = parts.think_text is not None
    if config.mode is ThinkRewardMode.BINARY:
        complete = present and trace.stage_count == 6
        if config.require_order:
            complete = complete and trace.ordered
        return 1.0 if complete else 0.0
    return 0.5 * (1.0 if present else 0.0) + 0.5 * (trace.stage_count / 6.0)


def structural_validity(parts: ResponseParts, trace: DwtTrace) -> bool:
    """True iff the response has matched think tags and all six stages in
    canonical order. Feeds the reasoning-coverage rate."""
    return (
        parts.think_text is not None
        and trace.stage_count == 6
        and trace.ordered
    )
