import numpy as np
import pytest

from svgreward.errors import NonSvgRootError, ParseError, RenderError
from svgreward.svg import (
    FailureStage,
    RasterImage,
    SvgDocument,
    SvgElement,
    check_renderable,
    count_complexity,
    parse_svg,
    render_raster,
)

RED_CIRCLE = (
    '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 100 100">'
    '<circle cx="50" cy="50" r="40" fill="red"/></svg>'
)


class TestParse:
    def test_canonical_document(self):
        doc = parse_svg(RED_CIRCLE)
        assert doc.root_tag == "svg"
        assert doc.view_box == (0.0, 0.0, 100.0, 100.0)
        assert len(doc.root.children) == 1
        assert doc.root.children[0].local_tag == "circle"
        assert doc.root.children[0].attributes["fill"] == "red"

    def test_minimal_document(self):
        doc = parse_svg("<svg></svg>")
        assert doc.view_box is None
        assert doc.root.children == []

    def test_non_svg_root(self):
        with pytest.raises(NonSvgRootError):
            parse_svg("<div><p/></div>")

    def test_malformed(self):
        with pytest.raises(ParseError):
            parse_svg("<svg><unclosed")
        with pytest.raises(ParseError):
            parse_svg("")

    def test_source_text_round_trip(self):
        for text in (RED_CIRCLE, "<svg></svg>", '<svg viewBox="0 0 1 1">\n</svg>'):
            assert parse_svg(text).source_text == text

    def test_namespace_prefix_stripped_for_matching(self):
        doc = parse_svg('<svg:svg xmlns:svg="http://www.w3.org/2000/svg"></svg:svg>')
        assert doc.root_tag == "svg"
        assert doc.root.tag == "svg:svg"

    def test_attributes_kept_verbatim(self):
        doc = parse_svg('<svg xmlns:xlink="http://x" data-Weird="A B"></svg>')
        assert doc.root.attributes["xmlns:xlink"] == "http://x"
        assert doc.root.attributes["data-Weird"] == "A B"

    def test_invalid_view_box_becomes_warning(self):
        doc = parse_svg('<svg viewBox="0 0 0 100"></svg>')
        assert doc.view_box is None
        assert doc.warnings


class TestRender:
    def test_full_canvas_red_rect(self):
        doc = parse_svg(
            '<svg viewBox="0 0 100 100">'
            '<rect x="0" y="0" width="100" height="100" fill="red"/></svg>'
        )
        img = render_raster(doc, 4, 4)
        assert img.pixels.shape == (4, 4, 4)
        assert np.all(img.pixels == np.array([255, 0, 0, 255], dtype=np.uint8))

    def test_empty_document_fully_transparent(self):
        img = render_raster(parse_svg('<svg viewBox="0 0 100 100"></svg>'), 4, 4)
        assert np.all(img.pixels == 0)

    def test_half_cover_rect(self):
        doc = parse_svg(
            '<svg viewBox="0 0 100 100"><rect width="50" height="100" fill="blue"/></svg>'
        )
        img = render_raster(doc, 2, 1)
        assert img.pixels[0, 0].tolist() == [0, 0, 255, 255]
        assert img.pixels[0, 1].tolist() == [0, 0, 0, 0]

    def test_deterministic(self):
        doc = parse_svg(RED_CIRCLE)
        a = render_raster(doc, 32, 32)
        b = render_raster(doc, 32, 32)
        assert a.tobytes() == b.tobytes()

    def test_malformed_path_rejected(self):
        doc = parse_svg('<svg viewBox="0 0 10 10"><path d="M0 0 X9"/></svg>')
        with pytest.raises(RenderError):
            render_raster(doc, 8, 8)

    def test_unknown_paint_rejected(self):
        doc = parse_svg(
            '<svg viewBox="0 0 10 10"><rect width="5" height="5" fill="url(#g)"/></svg>'
        )
        with pytest.raises(RenderError):
            render_raster(doc, 8, 8)

    def test_use_rejected(self):
        doc = parse_svg('<svg viewBox="0 0 10 10"><use href="#x"/></svg>')
        with pytest.raises(RenderError):
            render_raster(doc, 8, 8)

    def test_unknown_elements_skipped(self):
        doc = parse_svg(
            '<svg viewBox="0 0 10 10"><filterish/><rect width="10" height="5" fill="lime"/></svg>'
        )
        img = render_raster(doc, 2, 2)
        assert img.pixels[0, 0, 3] == 255

    def test_viewbox_fallback_to_width_height(self):
        doc = parse_svg('<svg width="10" height="10"><rect width="5" height="10" fill="black"/></svg>')
        img = render_raster(doc, 2, 1)
        assert img.pixels[0, 0, 3] == 255
        assert img.pixels[0, 1, 3] == 0

    def test_group_opacity_multiplies(self):
        doc = parse_svg(
            '<svg viewBox="0 0 1 1"><g opacity="0.5">'
            '<rect width="1" height="1" fill="black" fill-opacity="0.5"/></g></svg>'
        )
        img = render_raster(doc, 1, 1)
        assert img.pixels[0, 0, 3] == round(0.25 * 255)

    def test_raster_invariants(self):
        img = render_raster(parse_svg(RED_CIRCLE), 16, 16)
        assert isinstance(img, RasterImage)
        assert len(img.tobytes()) == 16 * 16 * 4


class TestCheckRenderable:
    def test_well_formed_circle(self):
        verdict = check_renderable(RED_CIRCLE)
        assert verdict.renderable is True
        assert verdict.failure_stage is None
        assert verdict.raster is not None

    def test_malformed(self):
        verdict = check_renderable("<svg><unclosed")
        assert verdict.renderable is False
        assert verdict.failure_stage is FailureStage.PARSE_ERROR
        assert verdict.raster is None

    def test_empty_canvas(self):
        verdict = check_renderable('<svg viewBox="0 0 100 100"></svg>')
        assert verdict.failure_stage is FailureStage.EMPTY_CANVAS

    def test_uniform_flood_is_empty(self):
        verdict = check_renderable(
            '<svg viewBox="0 0 1 1"><rect width="1" height="1" fill="white"/></svg>'
        )
        assert verdict.failure_stage is FailureStage.EMPTY_CANVAS

    def test_deterministic_verdicts(self):
        a = check_renderable(RED_CIRCLE, 64)
        b = check_renderable(RED_CIRCLE, 64)
        assert a.renderable == b.renderable
        assert a.raster.tobytes() == b.raster.tobytes()

    def test_golden_corpus(self, svg_corpus):
        texts, labels = svg_corpus
        for name, want in labels.items():
            verdict = check_renderable(texts[name])
            assert verdict.renderable == want["renderable"], name
            stage = verdict.failure_stage.value if verdict.failure_stage else None
            assert stage == want["failure_stage"], name


class TestComplexity:
    def test_golden_corpus(self, complexity_corpus):
        texts, labels = complexity_corpus
        for name, want in labels.items():
            report = count_complexity(parse_svg(texts[name]))
            assert report.path_command_count == want["path_command_count"], name
            assert report.primitive_count == want["primitive_count"], name
            assert report.total == want["total"], name
            assert report.malformed_path_count == want["malformed"], name

    def test_additive_over_children(self, complexity_corpus):
        texts, _ = complexity_corpus
        doc = parse_svg(texts["c05_mixed.svg"])
        whole = count_complexity(doc).total
        parts = 0
        for child in doc.root.children:
            sub = SvgDocument(
                root_tag="svg",
                root=SvgElement("svg", {}, [child]),
                view_box=None,
                source_text="",
            )
            parts += count_complexity(sub).total
        assert whole == parts
