import html as html_lib
import json
import re

import numpy as np
import pytest
from PIL import Image

from cppgen.detect import BBox, Context
from cppgen.errors import MissingSegment
from cppgen.present import (MARKUP, PALETTE, RECORDS, build_cpp, bundle_to_dict,
                            color_for, embolden, render_overlay, render_report,
                            save_overlay)
from cppgen.segmenter import (FALLBACK_TEXT, PolicySegment, Sentence, SegmentSentence)
from cppgen.taxonomy import DataType

from helpers import blank_canvas


def ctx(dt, x, y, w=40, h=20, kind="textual", evidence="e"):
    return Context(BBox(x, y, w, h), dt, kind, evidence, 1.0)


def seg(dt, text=None, bold=()):
    if text is None:
        return PolicySegment(dt, (), False)
    sentence = Sentence(text, 0, 0, len(text))
    return PolicySegment(dt, (SegmentSentence(sentence, tuple(bold)),), True)


def full_segments(**overrides):
    segments = {dt: seg(dt) for dt in DataType}
    for label, segment in overrides.items():
        segments[DataType.from_label(label)] = segment
    return segments


LOC2_BIRTH1 = [ctx(DataType.LOCATION, 10, 10), ctx(DataType.BIRTHDAY, 10, 40),
               ctx(DataType.LOCATION, 100, 60, kind="iconic", evidence="Location")]


class TestBuildCpp:
    def test_grouping(self):
        bundle = build_cpp(LOC2_BIRTH1, full_segments())
        assert len(bundle.annotations) == 2
        by_type = {a.data_type: a for a in bundle.annotations}
        assert len(by_type[DataType.LOCATION].contexts) == 2
        assert len(by_type[DataType.BIRTHDAY].contexts) == 1

    def test_empty_contexts(self):
        bundle = build_cpp([], full_segments())
        assert bundle.annotations == ()

    def test_unmatched_segments_omitted(self):
        bundle = build_cpp([ctx(DataType.PHONE, 5, 5)],
                           full_segments(Phone=seg(DataType.PHONE, "Call us.")))
        assert [a.data_type for a in bundle.annotations] == [DataType.PHONE]

    def test_missing_segment_raises(self):
        segments = full_segments()
        del segments[DataType.LOCATION]
        with pytest.raises(MissingSegment):
            build_cpp([ctx(DataType.LOCATION, 1, 1)], segments)

    def test_fallback_segment_carried(self):
        bundle = build_cpp([ctx(DataType.VOICES, 3, 3)], full_segments())
        (annotation,) = bundle.annotations
        assert annotation.segment.rendered_text() == FALLBACK_TEXT
        record = bundle_to_dict(bundle)
        assert record["annotations"][0]["segment"]["text"] == FALLBACK_TEXT

    def test_partition_preserves_context_multiset(self):
        bundle = build_cpp(LOC2_BIRTH1, full_segments())
        key = lambda c: (c.bbox.x, c.bbox.y, c.bbox.w, c.bbox.h, c.data_type.value)
        regrouped = sorted((key(c) for a in bundle.annotations for c in a.contexts))
        assert regrouped == sorted(key(c) for c in LOC2_BIRTH1)

    def test_annotation_order_by_first_context_raster(self):
        contexts = [ctx(DataType.BIRTHDAY, 10, 40), ctx(DataType.LOCATION, 10, 10),
                    ctx(DataType.LOCATION, 100, 60)]
        bundle = build_cpp(contexts, full_segments())
        assert [a.data_type for a in bundle.annotations] == \
            [DataType.LOCATION, DataType.BIRTHDAY]

    def test_color_index_is_stable_ordinal(self):
        bundle = build_cpp(LOC2_BIRTH1, full_segments())
        for a in bundle.annotations:
            assert a.color_index == a.data_type.ordinal
        indices = [a.color_index for a in bundle.annotations]
        assert len(indices) == len(set(indices))

    def test_invariants(self):
        bundle = build_cpp(LOC2_BIRTH1, full_segments())
        for a in bundle.annotations:
            assert all(c.data_type is a.data_type for c in a.contexts)
            assert a.segment.data_type is a.data_type


class TestReports:
    def test_records_json(self):
        bundle = build_cpp(LOC2_BIRTH1, full_segments(
            Location=seg(DataType.LOCATION, "We collect your location.", [(16, 24)])),
            screenshot_id="shot1", generated_at="2024-01-01T00:00:00+00:00")
        record = json.loads(render_report(bundle, RECORDS))
        assert record["screenshot_id"] == "shot1"
        assert record["annotations"][0]["data_type"] == "Location"
        assert record["annotations"][0]["segment"]["sentences"][0]["bold_spans"] == [[16, 24]]

    def test_markup_bold_span(self):
        bundle = build_cpp([ctx(DataType.LOCATION, 10, 10)], full_segments(
            Location=seg(DataType.LOCATION, "We collect your location.", [(16, 24)])))
        markup = render_report(bundle, MARKUP).decode()
        assert "<b>location</b>" in markup
        assert markup.count("<b>") == 1

    def test_markup_strip_reproduces_text(self):
        text = "We collect your location."
        bundle = build_cpp([ctx(DataType.LOCATION, 10, 10)], full_segments(
            Location=seg(DataType.LOCATION, text, [(16, 24)])))
        markup = render_report(bundle, MARKUP).decode()
        (para,) = re.findall(r"<p>(.*)</p>", markup)
        assert html_lib.unescape(para.replace("<b>", "").replace("</b>", "")) == text

    def test_markup_empty_bundle(self):
        markup = render_report(build_cpp([], full_segments()), MARKUP).decode()
        assert "No privacy-related contexts detected." in markup

    def test_markup_color_matches_overlay_palette(self):
        bundle = build_cpp([ctx(DataType.BIRTHDAY, 5, 5)], full_segments())
        markup = render_report(bundle, MARKUP).decode()
        assert PALETTE[DataType.BIRTHDAY.ordinal] in markup

    def test_unknown_format_rejected(self):
        with pytest.raises(ValueError):
            render_report(build_cpp([], full_segments()), "yaml")


class TestOverlay:
    def test_empty_bundle_identity(self):
        image = Image.fromarray(blank_canvas())
        out = render_overlay(image, build_cpp([], full_segments()))
        assert out.size == image.size
        assert np.array_equal(np.asarray(out), np.asarray(image.convert("RGB")))

    def test_rectangles_drawn(self):
        image = Image.fromarray(blank_canvas())
        bundle = build_cpp(LOC2_BIRTH1, full_segments())
        out = np.asarray(render_overlay(image, bundle))
        changed = (out != 255).any(axis=2)
        assert changed.sum() > 0
        # pixels changed only along the three context rectangles
        for c in LOC2_BIRTH1:
            b = c.bbox
            assert changed[b.y, b.x:b.x + b.w].all()
        mask = np.zeros(changed.shape, dtype=bool)
        for c in LOC2_BIRTH1:
            b = c.bbox
            mask[b.y:b.y + b.h, b.x:b.x + b.w] = True
        assert not changed[~mask].any()

    def test_same_type_same_color_and_report_consistency(self):
        image = Image.fromarray(blank_canvas())
        bundle = build_cpp(LOC2_BIRTH1, full_segments())
        out = np.asarray(render_overlay(image, bundle))
        loc = [c.bbox for c in LOC2_BIRTH1 if c.data_type is DataType.LOCATION]
        colors = {tuple(out[b.y, b.x + 5]) for b in loc}
        assert len(colors) == 1
        expected = color_for(DataType.LOCATION).lstrip("#")
        assert colors == {tuple(int(expected[i:i + 2], 16) for i in (0, 2, 4))}

    def test_dimensions_preserved_and_saved(self, tmp_path):
        image = Image.fromarray(blank_canvas(123, 77))
        bundle = build_cpp([], full_segments())
        path = tmp_path / "overlay.png"
        save_overlay(image, bundle, path)
        with Image.open(path) as saved:
            assert saved.size == (123, 77)


class TestEmbolden:
    def test_escapes_outside_and_inside(self):
        out = embolden("a <b> & location", [(8, 16)])
        assert out == "a &lt;b&gt; &amp; <b>location</b>"

    def test_no_spans(self):
        assert embolden("plain", []) == "plain"
