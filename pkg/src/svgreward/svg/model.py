"""SVG document model and parsing.

Parsing uses expat directly (no namespace expansion) so tag and attribute
names stay verbatim; namespace prefixes are stripped only when *matching*
tag names. The original text is kept on the document untouched.
"""

from __future__ import annotations

import xml.parsers.expat
from dataclasses import dataclass, field

import numpy as np

from ..errors import NonSvgRootError, ParseError


def strip_namespace(tag: str) -> str:
    """Drop a `prefix:` namespace qualifier, keeping the local name's case."""
    return tag.rsplit(":", 1)[-1]


@dataclass
class SvgElement:
    """One element: verbatim tag/attributes plus ordered children."""

    tag: str
    attributes: dict[str, str]
    children: list["SvgElement"] = field(default_factory=list)

    @property
    def local_tag(self) -> str:
        return strip_namespace(self.tag)

    def iter_subtree(self):
        """Yield this element and all descendants, document order."""
        yield self
        for child in self.children:
            yield from child.iter_subtree()


@dataclass
class SvgDocument:
    root_tag: str
    root: SvgElement
    view_box: tuple[float, float, float, float] | None
    source_text: str
    warnings: list[str] = field(default_factory=list)


@dataclass
class RasterImage:
    """Fixed-size RGBA8 raster, row-major."""

    width: int
    height: int
    pixels: np.ndarray  # shape (height, width, 4), dtype uint8

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("raster dimensions must be positive")
        expected = (self.height, self.width, 4)
        if self.pixels.shape != expected or self.pixels.dtype != np.uint8:
            raise ValueError(
                f"pixel buffer must be uint8 with shape {expected}, "
                f"got {self.pixels.dtype} {self.pixels.shape}"
            )

    def tobytes(self) -> bytes:
        return self.pixels.tobytes()

    def is_uniform(self) -> bool:
        """True when every RGBA pixel is identical (the empty-canvas rule)."""
        flat = self.pixels.reshape(-1, 4)
        return bool(np.all(flat == flat[0]))


def _parse_view_box(value: str) -> tuple[float, float, float, float] | None:
    parts = value.replace(",", " ").split()
    if len(parts) != 4:
        return None
    try:
        min_x, min_y, width, height = (float(p) for p in parts)
    except ValueError:
        return None
    if width <= 0 or height <= 0:
        return None
    return (min_x, min_y, width, height)


def parse_svg(text: str) -> SvgDocument:
    """Parse SVG text into a document model.

    Raises ParseError for malformed markup and NonSvgRootError when the
    markup is well-formed but the root element is not <svg>.
    """
    if not text:
        raise ParseError("empty input")

    parser = xml.parsers.expat.ParserCreate()
    stack: list[SvgElement] = []
    root_holder: list[SvgElement] = []

    def start_element(name, attrs):
        element = SvgElement(tag=name, attributes=dict(attrs))
        if stack:
            stack[-1].children.append(element)
        else:
            root_holder.append(element)
        stack.append(element)

    def end_element(name):
        stack.pop()

    parser.StartElementHandler = start_element
    parser.EndElementHandler = end_element
    try:
        parser.Parse(text, True)
    except xml.parsers.expat.ExpatError as exc:
        raise ParseError(
            str(exc), line=parser.ErrorLineNumber, column=parser.ErrorColumnNumber
        ) from exc

    if not root_holder:
        raise ParseError("no root element found")
    root = root_holder[0]
    if root.local_tag != "svg":
        raise NonSvgRootError(f"root element is <{root.tag}>, not <svg>")

    warnings: list[str] = []
    view_box = None
    raw_view_box = root.attributes.get("viewBox")
    if raw_view_box is not None:
        view_box = _parse_view_box(raw_view_box)
        if view_box is None:
            warnings.append(f"ignoring invalid viewBox {raw_view_box!r}")

    return SvgDocument(
        root_tag=root.local_tag,
        root=root,
        view_box=view_box,
        source_text=text,
        warnings=warnings,
    )
