"""Assemble and render contextual privacy policies.

Contexts are grouped per data type, joined with their policy segments, and
rendered three ways: a structured JSON record, an HTML report with the
recorded spans in bold, and a screenshot overlay with one color per data
type (stable across runs: the palette is indexed by data-type ordinal).
"""

from __future__ import annotations

import html
import json
from dataclasses import dataclass
from datetime import datetime, timezone

from PIL import Image, ImageDraw

from .detect import Context
from .errors import ImageEncodeError, MissingSegment
from .segmenter import PolicySegment
from .taxonomy import DataType

PALETTE = (
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#46f0f0",
    "#f032e6", "#bcf60c", "#008080", "#9a6324", "#800000", "#808000",
)


def color_for(data_type: DataType) -> str:
    return PALETTE[data_type.ordinal]


@dataclass(frozen=True)
class CppAnnotation:
    data_type: DataType
    contexts: tuple[Context, ...]
    segment: PolicySegment
    color_index: int


@dataclass(frozen=True)
class CppBundle:
    screenshot_id: str
    annotations: tuple[CppAnnotation, ...]
    generated_at: str


def build_cpp(contexts, segments: dict[DataType, PolicySegment],
              screenshot_id: str = "", generated_at: str | None = None) -> CppBundle:
    """One annotation per data type present in the contexts.

    Segment entries for undetected data types are dropped; a context whose
    data type has no segment entry raises MissingSegment.
    """
    grouped: dict[DataType, list[Context]] = {}
    for ctx in contexts:
        grouped.setdefault(ctx.data_type, []).append(ctx)

    annotations = []
    for data_type, group in grouped.items():
        if data_type not in segments:
            raise MissingSegment(f"no policy segment for detected type {data_type.value}")
        group.sort(key=lambda c: (c.bbox.y, c.bbox.x, c.bbox.h, c.bbox.w))
        annotations.append(CppAnnotation(data_type, tuple(group),
                                         segments[data_type], data_type.ordinal))
    annotations.sort(key=lambda a: (a.contexts[0].bbox.y, a.contexts[0].bbox.x))
    if generated_at is None:
        generated_at = datetime.now(timezone.utc).isoformat()
    return CppBundle(screenshot_id, tuple(annotations), generated_at)


def bundle_to_dict(bundle: CppBundle) -> dict:
    return {
        "screenshot_id": bundle.screenshot_id,
        "generated_at": bundle.generated_at,
        "annotations": [
            {
                "data_type": a.data_type.value,
                "color_index": a.color_index,
                "color": color_for(a.data_type),
                "contexts": [
                    {"bbox": {"x": c.bbox.x, "y": c.bbox.y, "w": c.bbox.w, "h": c.bbox.h},
                     "kind": c.kind, "evidence": c.evidence, "score": c.score}
                    for c in a.contexts
                ],
                "segment": {
                    "found": a.segment.found,
                    "text": a.segment.rendered_text(),
                    "sentences": [
                        {"text": ss.sentence.text,
                         "bold_spans": [list(span) for span in ss.bold_spans]}
                        for ss in a.segment.sentences
                    ],
                },
            }
            for a in bundle.annotations
        ],
    }


def embolden(text: str, spans) -> str:
    """HTML-escape text and wrap the recorded spans in <b> markers."""
    parts = []
    cursor = 0
    for start, end in spans:
        parts.append(html.escape(text[cursor:start]))
        parts.append("<b>" + html.escape(text[start:end]) + "</b>")
        cursor = end
    parts.append(html.escape(text[cursor:]))
    return "".join(parts)


RECORDS = "records"
MARKUP = "markup"


def render_report(bundle: CppBundle, fmt: str = RECORDS) -> bytes:
    if fmt == RECORDS:
        return (json.dumps(bundle_to_dict(bundle), sort_keys=True, indent=2) + "\n").encode("utf-8")
    if fmt != MARKUP:
        raise ValueError(f"unknown report format: {fmt}")

    lines = [
        "<!doctype html>",
        "<html><head><meta charset=\"utf-8\">",
        f"<title>Contextual privacy policy: {html.escape(bundle.screenshot_id)}</title>",
        "</head><body>",
        f"<h1>{html.escape(bundle.screenshot_id) or 'Contextual privacy policy'}</h1>",
    ]
    if not bundle.annotations:
        lines.append("<p>No privacy-related contexts detected.</p>")
    for a in bundle.annotations:
        color = color_for(a.data_type)
        lines.append("<section>")
        lines.append(f'<h2 style="color:{color}">{html.escape(a.data_type.value)}</h2>')
        lines.append("<ul>")
        for c in a.contexts:
            label = f"{c.kind}: {c.evidence} @ ({c.bbox.x},{c.bbox.y},{c.bbox.w},{c.bbox.h})"
            lines.append(f'<li style="color:{color}">{html.escape(label)}</li>')
        lines.append("</ul>")
        if a.segment.found:
            for ss in a.segment.sentences:
                lines.append(f"<p>{embolden(ss.sentence.text, ss.bold_spans)}</p>")
        else:
            lines.append(f"<p>{html.escape(a.segment.rendered_text())}</p>")
        lines.append("</section>")
    lines.append("</body></html>")
    return ("\n".join(lines) + "\n").encode("utf-8")


def render_overlay(image, bundle: CppBundle) -> Image.Image:
    """Draw each annotation's context boxes in its color; size is unchanged."""
    if isinstance(image, Image.Image):
        canvas = image.convert("RGB")
    else:
        canvas = Image.open(image).convert("RGB")
    draw = ImageDraw.Draw(canvas)
    for a in bundle.annotations:
        color = color_for(a.data_type)
        for c in a.contexts:
            b = c.bbox
            draw.rectangle([b.x, b.y, b.x + b.w - 1, b.y + b.h - 1], outline=color, width=3)
    return canvas


def save_overlay(image, bundle: CppBundle, path) -> None:
    canvas = render_overlay(image, bundle)
    try:
        canvas.save(path, format="PNG")
    except (OSError, ValueError) as exc:
        raise ImageEncodeError(f"cannot encode overlay: {exc}") from exc
