"""Three-stage corpus filter over (prompt, reasoning, svg) triplets plus
corpus statistics.

Stage order is strict and observable: a triplet that fails markup or
reasoning-tag syntax never reaches the renderer, and one that fails
rendering (including the empty-canvas rule) never reaches the consistency
scorer.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from .dwt import split_response
from .errors import (
    EmptyInputError,
    InputFormatError,
    LengthMismatchError,
    NonSvgRootError,
    ParseError,
)
from .metrics import approx_token_count
from .scorer import ScorerClient
from .svg import DEFAULT_RASTER_SIZE, check_renderable, parse_svg

DEFAULT_CONSISTENCY_THRESHOLD = 0.8


class DomainTag(enum.Enum):
    LOGO_EMOJI = "logo_emoji"
    ICONOGRAPHY = "iconography"
    UI_LAYOUT = "ui_layout"
    DIAGRAM = "diagram"


class RejectionStage(enum.Enum):
    SYNTAX = "SyntaxStage"
    RENDER = "RenderStage"
    CONSISTENCY = "ConsistencyStage"


@dataclass
class Triplet:
    id: str
    prompt: str
    dwt_text: str
    svg_text: str
    domain_tag: DomainTag | None = None

    def __post_init__(self):
        if not self.prompt:
            raise ValueError(f"triplet {self.id!r} has an empty prompt")


@dataclass
class FilterVerdict:
    accepted: bool
    rejected_at: RejectionStage | None = None
    consistency_score: float | None = None

    def __post_init__(self):
        if self.accepted != (self.rejected_at is None):
            raise ValueError("accepted verdicts cannot carry a rejection stage")


def filter_triplet(
    triplet: Triplet,
    scorer: ScorerClient,
    threshold: float = DEFAULT_CONSISTENCY_THRESHOLD,
    raster_size: int = DEFAULT_RASTER_SIZE,
) -> FilterVerdict:
    """Run one triplet through syntax, render, and consistency stages.

    Syntax: the SVG must parse with an svg root and the reasoning text must
    not contain an unterminated think block. Render: the SVG must rasterize
    to a non-empty canvas. Consistency: the scorer rates (raster, prompt,
    reasoning) and the triplet is kept iff the score reaches the threshold.
    """
    try:
        parse_svg(triplet.svg_text)
    except (ParseError, NonSvgRootError):
        return FilterVerdict(False, RejectionStage.SYNTAX)
    if split_response(triplet.dwt_text).unterminated_think:
        return FilterVerdict(False, RejectionStage.SYNTAX)

    verdict = check_renderable(triplet.svg_text, raster_size)
    if not verdict.renderable:
        return FilterVerdict(False, RejectionStage.RENDER)

    score = scorer.consistency(verdict.raster, triplet.prompt, triplet.dwt_text)
    if score >= threshold:
        return FilterVerdict(True, consistency_score=score)
    return FilterVerdict(False, RejectionStage.CONSISTENCY, consistency_score=score)


# Reasoning-length histogram buckets, in whitespace-proxy tokens.
TOKEN_BUCKET_LABELS = ("<500", "500-1000", "1000-2000", "2000-3000", ">3000")
_TOKEN_BUCKET_EDGES = (500, 1000, 2000, 3000)


def _token_bucket(count: int) -> str:
    for edge, label in zip(_TOKEN_BUCKET_EDGES, TOKEN_BUCKET_LABELS):
        if count < edge:
            return label
    return TOKEN_BUCKET_LABELS[-1]


@dataclass
class CorpusStats:
    n: int
    domain_histogram: dict[str, int]
    dwt_token_buckets: dict[str, int]
    acceptance_rate: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "domain_histogram": dict(self.domain_histogram),
            "dwt_token_buckets": dict(self.dwt_token_buckets),
            "acceptance_rate": self.acceptance_rate,
        }


def corpus_stats(triplets: list[Triplet], verdicts: list[FilterVerdict]) -> CorpusStats:
    """Domain and reasoning-depth histograms plus the acceptance rate.

    Token counts use the whitespace proxy tokenizer; bucket boundaries are
    half-open on the right.
    """
    if len(triplets) != len(verdicts):
        raise LengthMismatchError(
            f"{len(triplets)} triplets vs {len(verdicts)} verdicts"
        )
    if not triplets:
        raise EmptyInputError("corpus_stats needs at least one triplet")
    domains: dict[str, int] = {}
    buckets = {label: 0 for label in TOKEN_BUCKET_LABELS}
    for t in triplets:
        key = t.domain_tag.value if t.domain_tag is not None else "unknown"
        domains[key] = domains.get(key, 0) + 1
        buckets[_token_bucket(approx_token_count(t.dwt_text))] += 1
    accepted = sum(1 for v in verdicts if v.accepted)
    return CorpusStats(
        n=len(triplets),
        domain_histogram=domains,
        dwt_token_buckets=buckets,
        acceptance_rate=accepted / len(triplets),
    )


# ---------------------------------------------------------------------------
# JSONL schemas

def triplet_from_dict(obj: dict, context: str = "") -> Triplet:
    try:
        domain_raw = obj.get("domain")
        return Triplet(
            id=str(obj["id"]),
            prompt=str(obj["prompt"]),
            dwt_text=str(obj["dwt"]),
            svg_text=str(obj["svg"]),
            domain_tag=DomainTag(domain_raw) if domain_raw is not None else None,
        )
    except KeyError as exc:
        raise InputFormatError(f"{context}: missing field {exc}") from exc
    except ValueError as exc:
        raise InputFormatError(f"{context}: {exc}") from exc


def triplet_to_dict(t: Triplet) -> dict:
    obj = {"id": t.id, "prompt": t.prompt, "dwt": t.dwt_text, "svg": t.svg_text}
    if t.domain_tag is not None:
        obj["domain"] = t.domain_tag.value
    return obj


def verdict_to_dict(triplet_id: str, verdict: FilterVerdict) -> dict:
    obj: dict = {"id": triplet_id, "accepted": verdict.accepted}
    if verdict.rejected_at is not None:
        obj["rejected_at"] = verdict.rejected_at.value
    if verdict.consistency_score is not None:
        obj["consistency_score"] = verdict.consistency_score
    return obj


def read_triplets_jsonl(path) -> list[Triplet]:
    triplets: list[Triplet] = []
    seen: set[str] = set()
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
                triplet = triplet_from_dict(obj, f"{path}:{line_no}")
                if triplet.id in seen:
                    raise InputFormatError(
                        f"{path}:{line_no}: duplicate triplet id {triplet.id!r}"
                    )
                seen.add(triplet.id)
                triplets.append(triplet)
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    if not triplets:
        raise InputFormatError(f"{path}: no triplets found")
    return triplets
