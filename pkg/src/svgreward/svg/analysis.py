"""Render-validity verdicts and structural complexity counting."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..errors import (
    MalformedPathDataError,
    NonSvgRootError,
    ParseError,
    RenderError,
)
from .model import RasterImage, SvgDocument, parse_svg
from .pathdata import count_path_commands
from .raster import render_raster

DEFAULT_RASTER_SIZE = 256

PRIMITIVE_TAGS = frozenset(
    {"rect", "circle", "ellipse", "line", "polyline", "polygon"}
)


class FailureStage(enum.Enum):
    PARSE_ERROR = "ParseError"
    NON_SVG_ROOT = "NonSvgRoot"
    RENDER_ERROR = "RenderError"
    EMPTY_CANVAS = "EmptyCanvas"


@dataclass
class RenderVerdict:
    renderable: bool
    failure_stage: FailureStage | None = None
    raster: RasterImage | None = None
    detail: str = ""

    def __post_init__(self):
        if self.renderable != (self.failure_stage is None) or self.renderable != (
            self.raster is not None
        ):
            raise ValueError(
                "renderable verdicts carry a raster and no failure stage; "
                "failed verdicts carry a stage and no raster"
            )


@dataclass
class ComplexityReport:
    """Path-command plus primitive-element counts for one document."""

    path_command_count: int
    primitive_count: int
    malformed_path_count: int = 0

    @property
    def total(self) -> int:
        return self.path_command_count + self.primitive_count


def check_renderable(text: str, raster_size: int = DEFAULT_RASTER_SIZE) -> RenderVerdict:
    """Classify SVG text by the first failing stage, if any.

    Stages in order: markup parse, svg-root check, rasterization, and the
    empty-canvas rule (a raster whose RGBA pixels are all identical counts
    as empty). All failures are encoded in the verdict, never raised.
    """
    try:
        doc = parse_svg(text)
    except ParseError as exc:
        return RenderVerdict(False, FailureStage.PARSE_ERROR, detail=str(exc))
    except NonSvgRootError as exc:
        return RenderVerdict(False, FailureStage.NON_SVG_ROOT, detail=str(exc))
    try:
        raster = render_raster(doc, raster_size, raster_size)
    except RenderError as exc:
        return RenderVerdict(False, FailureStage.RENDER_ERROR, detail=str(exc))
    if raster.is_uniform():
        return RenderVerdict(
            False, FailureStage.EMPTY_CANVAS, detail="all pixels identical"
        )
    return RenderVerdict(True, raster=raster)


def count_complexity(doc: SvgDocument) -> ComplexityReport:
    """Count path commands (implicit repeats included) and primitive elements.

    A `d` attribute that cannot be tokenized contributes zero commands and
    bumps malformed_path_count instead of failing the whole document.
    """
    path_commands = 0
    primitives = 0
    malformed = 0
    for element in doc.root.iter_subtree():
        tag = element.local_tag
        if tag == "path":
            try:
                path_commands += count_path_commands(element.attributes.get("d", ""))
            except MalformedPathDataError:
                malformed += 1
        elif tag in PRIMITIVE_TAGS:
            primitives += 1
    return ComplexityReport(
        path_command_count=path_commands,
        primitive_count=primitives,
        malformed_path_count=malformed,
    )
