"""Acceptance suite: one test per acceptance criterion, each printing a
PASS/FAIL line (run with `pytest tests/test_acceptance.py -v -s`).

Expected values are hand-computed or come from independent oracles built in
tests/helpers.py; nothing here is derived from the code paths under test.
"""

import contextlib
import random
import re
import string
import time

import networkx as nx
import pytest

from cppgen.config import PipelineConfig
from cppgen.detect import BBox, TextBox, detect_contexts, localize_icon_candidates
from cppgen.evalharness import iou, match_contexts, run_eval, segment_similarity
from cppgen.ingest import Block, PARAGRAPH, HEADING, PolicyDocument, RawPolicy, parse_html
from cppgen.lexical import LexicalDatabase
from cppgen.present import build_cpp
from cppgen.segmenter import (FALLBACK_TEXT, FIRST_PARTY, THIRD_PARTY, extract_segments,
                              phrase_similarity, select_relevant_paragraphs,
                              tokenize_sentences)
from cppgen.taxonomy import DataType, keyword_scan, load_default_taxonomy

from helpers import (MICRO_DATASET, blank_canvas, draw_rect, load_graph_independently,
                     oracle_phrase_similarity, oracle_scan, oracle_segment_similarity,
                     paste_exemplar)

TAX = load_default_taxonomy()
LEX = LexicalDatabase()


@contextlib.contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"\nACCEPTANCE {name}: FAIL")
        raise
    print(f"\nACCEPTANCE {name}: PASS")


def test_metric_oracle_equivalence():
    """run_eval on the micro dataset equals the hand computation exactly."""
    with criterion("metric-oracle equivalence"):
        start = time.monotonic()
        report = run_eval(MICRO_DATASET, PipelineConfig())
        elapsed = time.monotonic() - start

        expected_context = {
            DataType.NAME: (0, 0, 0), DataType.BIRTHDAY: (1, 0, 0),
            DataType.ADDRESS: (0, 0, 0), DataType.PHONE: (2, 0, 1),
            DataType.EMAIL: (0, 2, 1), DataType.PROFILE: (1, 0, 0),
            DataType.CONTACTS: (0, 0, 0), DataType.LOCATION: (3, 0, 0),
            DataType.PHOTOS: (3, 0, 0), DataType.VOICES: (0, 2, 1),
            DataType.FINANCIAL_INFO: (1, 0, 0), DataType.SOCIAL_MEDIA: (1, 1, 1),
        }
        expected_segment = {
            DataType.NAME: (2, 0, 0), DataType.BIRTHDAY: (0, 0, 0),
            DataType.ADDRESS: (0, 0, 0), DataType.PHONE: (1, 0, 0),
            DataType.EMAIL: (1, 0, 0), DataType.PROFILE: (1, 0, 0),
            DataType.CONTACTS: (0, 0, 0), DataType.LOCATION: (1, 0, 0),
            DataType.PHOTOS: (3, 0, 0), DataType.VOICES: (0, 0, 1),
            DataType.FINANCIAL_INFO: (0, 0, 1), DataType.SOCIAL_MEDIA: (0, 1, 0),
        }
        for row in report.context_rows:
            assert (row.tp, row.fp, row.fn) == expected_context[row.category], row.category
        for row in report.segment_rows:
            assert (row.tp, row.fp, row.fn) == expected_segment[row.category], row.category

        # averages over the categories with ground truth: 9 context, 8 segment
        assert report.context_average[0] == pytest.approx(6 / 9, abs=1e-12)
        assert report.context_average[1] == pytest.approx(13 / 18, abs=1e-12)
        assert report.context_average[2] == pytest.approx(37 / 54, abs=1e-12)
        for value in report.segment_average:
            assert value == pytest.approx(3 / 4, abs=1e-12)

        # coverage per screenshot: 1,1,.5,(excl),1,1,(excl),1,.5,.5 -> 6.5/8
        assert report.n_coverage_screenshots == 8
        assert report.coverage_rate == pytest.approx(13 / 16, abs=1e-12)
        # retrieved segments: 4+4+2; failures: beta SocialMedia, gamma Name
        assert (report.n_retrieved, report.n_successful) == (10, 8)
        assert report.success_rate == pytest.approx(4 / 5, abs=1e-12)
        assert report.n_apps == 3 and report.n_screenshots == 10
        assert elapsed < 10.0, f"run_eval took {elapsed:.1f}s"


def test_formula_fidelity_phrase_similarity():
    """phrase_similarity equals the independent graph oracle on random input."""
    with criterion("formula fidelity: phrase similarity"):
        first_sense, edges = load_graph_independently()
        graph = nx.Graph(edges)
        lemmas = sorted(k for k in first_sense if "_" not in k)
        rng = random.Random(20240601)
        vocabulary = lemmas + ["qzx", "blorp", "unknownword"]
        checked = 0
        for _ in range(250):
            p1 = " ".join(rng.choice(vocabulary) for _ in range(rng.randint(1, 6)))
            p2 = " ".join(rng.choice(vocabulary) for _ in range(rng.randint(1, 6)))
            expected = oracle_phrase_similarity(p1, p2, first_sense, graph)
            assert phrase_similarity(p1, p2, LEX) == pytest.approx(expected, abs=1e-12), (p1, p2)
            checked += 1
        assert checked >= 200


def test_formula_fidelity_segment_similarity():
    """segment_similarity equals the brute-force LCS oracle on random input."""
    with criterion("formula fidelity: segment similarity"):
        rng = random.Random(77)
        alphabet = string.ascii_lowercase[:9] + "  "
        punct = ".,;:!?\n"

        def random_segment():
            phrases = []
            for _ in range(rng.randint(1, 8)):
                length = rng.randint(1, 18)
                phrases.append("".join(rng.choice(alphabet) for _ in range(length)))
            return "".join(p + rng.choice(punct) for p in phrases)

        checked = 0
        while checked < 220:
            ret, gts = random_segment(), random_segment()
            try:
                expected = oracle_segment_similarity(ret, gts)
            except AssertionError:
                continue  # all-whitespace side: degenerate by construction
            assert segment_similarity(ret, gts) == pytest.approx(expected, abs=1e-12), (ret, gts)
            checked += 1


def test_icon_rule_suite():
    """Survivors equal direct predicate evaluation on >= 50 synthetic shots."""
    with criterion("icon-rule suite"):
        rng = random.Random(4242)
        config = PipelineConfig()
        agreements = 0
        for shot in range(60):
            size = rng.choice([200, 256, 320])
            canvas = blank_canvas(size, size)
            rects: list[tuple[int, int, int, int]] = []
            for _ in range(rng.randint(1, 4)):
                for _attempt in range(40):
                    w = rng.randint(8, 130)
                    h = rng.randint(8, 130)
                    x = rng.randint(2, size - w - 2)
                    y = rng.randint(2, size - h - 2)
                    if all(x + w + 4 <= ox or ox + ow + 4 <= x or
                           y + h + 4 <= oy or oy + oh + 4 <= y
                           for ox, oy, ow, oh in rects):
                        rects.append(draw_rect(canvas, x, y, w, h))
                        break
            ocr = []
            for _ in range(rng.randint(0, 2)):
                ocr.append(TextBox(BBox(rng.randint(0, size - 40), rng.randint(0, size - 12),
                                        rng.randint(10, 40), rng.randint(8, 12)), "t"))

            def survives(r):
                x, y, w, h = r
                area_fraction = (w * h) / (size * size)
                if area_fraction > config.max_area_fraction:
                    return False
                if area_fraction < config.min_area_fraction:
                    return False
                if w / h < config.min_aspect:
                    return False
                box = BBox(x, y, w, h)
                if any(box.intersects(t.bbox) for t in ocr):
                    return False
                return True

            expected = {r for r in rects if survives(r)}
            got = {(c.bbox.x, c.bbox.y, c.bbox.w, c.bbox.h)
                   for c in localize_icon_candidates(
                       canvas, ocr, min_area_fraction=config.min_area_fraction,
                       max_area_fraction=config.max_area_fraction,
                       min_aspect=config.min_aspect)}
            assert got == expected, f"shot {shot}: {got} != {expected}"
            agreements += 1
        assert agreements >= 50


def merge_intervals(spans):
    merged = []
    for s, e in sorted(spans):
        if merged and s < merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], e))
        else:
            merged.append((s, e))
    return tuple(merged)


def test_keyword_pipeline_determinism():
    """A policy naming every keyword once yields all 12 types with exact spans."""
    with criterion("keyword-pipeline determinism"):
        sentences = [f"We may collect your {kw}." for entry in TAX for kw in entry.keywords]
        joined_case = "This concerns your locationWe may share things."
        sentences.append(joined_case)
        html = ("<html><body><h1>Types of information we collect</h1>"
                + "".join(f"<p>{s}</p>" for s in sentences)
                + "</body></html>")
        doc = parse_html(RawPolicy(html.encode()))
        assert doc.structure == "structured"
        segments = extract_segments(doc, TAX, lex=LEX)

        assert all(seg.found for seg in segments.values()), \
            [dt.value for dt, seg in segments.items() if not seg.found]

        # bold spans must equal the independent scan oracle, merged, per type
        for dt, seg in segments.items():
            for ss in seg.sentences:
                oracle_spans = merge_intervals(
                    [(s, e) for (odt, kw, s, e, mode) in oracle_scan(ss.sentence.text, TAX)
                     if odt is dt])
                assert ss.bold_spans == oracle_spans, (dt, ss.sentence.text)
                for s, e in ss.bold_spans:
                    snippet = ss.sentence.text[s:e].lower()
                    assert any(kw in snippet or snippet in kw
                               for kw in TAX.entry(dt).keywords)

        # the joined-word case must land in Location with the right span
        loc_sentences = {ss.sentence.text: ss for ss in segments[DataType.LOCATION].sentences}
        assert joined_case in loc_sentences
        ss = loc_sentences[joined_case]
        start = joined_case.index("locationWe")
        assert (start, start + len("location")) in ss.bold_spans

        # determinism: a second run is identical
        assert extract_segments(doc, TAX, lex=LEX) == segments


def test_fallback_string_exactness():
    """Unmatched data types render the exact fallback sentence."""
    with criterion("fallback-string exactness"):
        doc = parse_html(RawPolicy(b"<h1>Types of data we collect</h1>"
                                   b"<p>We may collect your email address.</p>"))
        segments = extract_segments(doc, TAX, lex=LEX)
        assert segments[DataType.EMAIL].found
        for dt in set(DataType) - {DataType.EMAIL}:
            assert not segments[dt].found
            assert segments[dt].rendered_text() == \
                "No relative information is found in the privacy policy."
        assert FALLBACK_TEXT == "No relative information is found in the privacy policy."


def test_threshold_strictness():
    """0.5 paragraph probability, 0.8 phrase similarity and IoU beta are strict."""
    with criterion("threshold strictness"):
        eps = 1e-9

        class StubParagraph:
            def __init__(self, p):
                self.p = p

            def classify_paragraph(self, text):
                return {FIRST_PARTY: self.p, THIRD_PARTY: 0.0}

        doc = PolicyDocument.from_blocks([Block(0, PARAGRAPH, "anything", None)])
        assert select_relevant_paragraphs(doc, paragraph_cls=StubParagraph(0.5)) == []
        assert select_relevant_paragraphs(doc, paragraph_cls=StubParagraph(0.5 + eps)) == [0]

        class StubLex:
            def __init__(self, value):
                self.value = value

            def path_similarity(self, a, b):
                return self.value if (a.lower(), b.lower()) == ("pics", "photo") else 0.0

        sentence_doc = PolicyDocument.from_blocks(
            [Block(0, PARAGRAPH, "Pics are stored on this device.", None)])
        at = extract_segments(sentence_doc, TAX, lex=StubLex(0.8), selected=[0])
        above = extract_segments(sentence_doc, TAX, lex=StubLex(0.8 + eps), selected=[0])
        assert not at[DataType.PHOTOS].found
        assert above[DataType.PHOTOS].found

        # IoU exactly beta is not a match; slightly more overlap is
        from cppgen.detect import Context
        exact = BBox(0, 0, 4, 3), BBox(0, 1, 4, 3)
        assert iou(*exact) == pytest.approx(0.5, abs=1e-15)
        pred = [Context(exact[0], DataType.PHONE, "textual", "e", 1.0)]
        gt_exact = [type("G", (), {"bbox": exact[1], "data_type": DataType.PHONE,
                                   "kind": "textual"})()]
        assert match_contexts(pred, gt_exact, beta=0.5)[DataType.PHONE] == (0, 1, 1)
        closer = [Context(BBox(0, 0, 4, 4), DataType.PHONE, "textual", "e", 1.0)]
        gt_closer = [type("G", (), {"bbox": BBox(0, 1, 4, 4), "data_type": DataType.PHONE,
                                    "kind": "textual"})()]
        assert iou(closer[0].bbox, gt_closer[0].bbox) == pytest.approx(0.6, abs=1e-12)
        assert match_contexts(closer, gt_closer, beta=0.5)[DataType.PHONE] == (1, 0, 0)


def test_worked_example_reconstruction():
    """Staged screenshot + OCR fixture + policy reproduce the worked example:
    three contexts (two Location, one Birthday), two annotations, with both
    Location contexts in one annotation."""
    with criterion("worked-example reconstruction"):
        canvas = blank_canvas()
        icon_box = paste_exemplar(canvas, "Location", 100, 60)
        ocr_boxes = [TextBox(BBox(10, 10, 90, 16), "Share your location"),
                     TextBox(BBox(10, 40, 90, 16), "use your birthday")]

        policy = (b"<html><body><h2>Types of information we collect</h2>"
                  b"<p>We may collect your geo-location to show nearby results.</p>"
                  b"<p>Tell us your birthday and we may send you a reward.</p>"
                  b"</body></html>")
        doc = parse_html(RawPolicy(policy))
        segments = extract_segments(doc, TAX, lex=LEX)

        contexts = detect_contexts(canvas, TAX, ocr_boxes=ocr_boxes)
        assert len(contexts) == 3
        types = sorted(c.data_type.value for c in contexts)
        assert types == ["Birthday", "Location", "Location"]
        kinds = {(c.data_type.value, c.kind) for c in contexts}
        assert kinds == {("Location", "textual"), ("Birthday", "textual"),
                         ("Location", "iconic")}

        bundle = build_cpp(contexts, segments, screenshot_id="worked-example")
        assert len(bundle.annotations) == 2
        by_type = {a.data_type: a for a in bundle.annotations}
        location = by_type[DataType.LOCATION]
        assert len(location.contexts) == 2
        assert {c.kind for c in location.contexts} == {"textual", "iconic"}
        assert {(c.bbox.x, c.bbox.y) for c in location.contexts} == {(10, 10), (100, 60)}
        assert BBox(*icon_box) in [c.bbox for c in location.contexts]
        assert location.segment.found
        assert by_type[DataType.BIRTHDAY].segment.found
        assert len(by_type[DataType.BIRTHDAY].contexts) == 1
