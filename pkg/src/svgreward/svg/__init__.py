"""SVG parsing, rasterization, validity, and complexity."""

from .analysis import (
    DEFAULT_RASTER_SIZE,
    ComplexityReport,
    FailureStage,
    PRIMITIVE_TAGS,
    RenderVerdict,
    check_renderable,
    count_complexity,
)
from .model import RasterImage, SvgDocument, SvgElement, parse_svg
from .pathdata import PathCommand, count_path_commands, parse_path_data
from .raster import render_raster

__all__ = [
    "DEFAULT_RASTER_SIZE",
    "ComplexityReport",
    "FailureStage",
    "PRIMITIVE_TAGS",
    "PathCommand",
    "RasterImage",
    "RenderVerdict",
    "SvgDocument",
    "SvgElement",
    "check_renderable",
    "count_complexity",
    "count_path_commands",
    "parse_path_data",
    "parse_svg",
    "render_raster",
]
