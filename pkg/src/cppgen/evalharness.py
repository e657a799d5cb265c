"""Evaluation over annotated datasets: detection metrics, segment metrics,
coverage rate and segment-similarity success rate.

Dataset layout:
    apps/<app_id>/policy.html
    apps/<app_id>/screenshots/<k>.png
    apps/<app_id>/annotations/<k>.json   {"contexts": [{bbox, data_type, kind}]}
    apps/<app_id>/segments.json          {data_type: {found, text}}
    apps/<app_id>/ocr/<k>.json           optional OCR fixtures
"""

from __future__ import annotations

import json
import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from PIL import Image, UnidentifiedImageError

from .config import PipelineConfig
from .detect import (BBox, Context, ICONIC, TEXTUAL, detect_contexts,
                     load_ocr_fixture)
from .errors import (CppgenError, DatasetSchemaError, DegenerateSegment,
                     MalformedDocument)
from .ingest import RawPolicy, filter_non_english, parse_html
from .language import TrigramLanguageDetector
from .lexical import LexicalDatabase
from .ports import make_ports
from .segmenter import FALLBACK_TEXT, extract_segments
from .taxonomy import (DataType, Taxonomy, load_default_taxonomy,
                       load_taxonomy)

log = logging.getLogger("cppgen")


@dataclass(frozen=True)
class GroundTruthContext:
    bbox: BBox
    data_type: DataType
    kind: str


@dataclass(frozen=True)
class GroundTruthSegment:
    data_type: DataType
    text: str
    found: bool


@dataclass(frozen=True)
class MetricRow:
    category: DataType
    tp: int
    fp: int
    fn: int

    @property
    def accuracy(self) -> float:
        denom = self.tp + self.fp + self.fn
        return self.tp / denom if denom else 0.0

    @property
    def precision(self) -> float:
        denom = self.tp + self.fp
        return self.tp / denom if denom else 0.0

    @property
    def recall(self) -> float:
        denom = self.tp + self.fn
        return self.tp / denom if denom else 0.0

    @property
    def gt_instances(self) -> int:
        return self.tp + self.fn


@dataclass(frozen=True)
class EvalReport:
    context_rows: tuple[MetricRow, ...]
    segment_rows: tuple[MetricRow, ...]
    context_average: tuple[float, float, float]
    segment_average: tuple[float, float, float]
    coverage_rate: float
    success_rate: float
    n_apps: int
    n_screenshots: int
    n_coverage_screenshots: int
    n_retrieved: int
    n_successful: int


# --- geometry and matching ---------------------------------------------------

def iou(a: BBox, b: BBox) -> float:
    """Intersection over union; 0 for disjoint boxes."""
    ix = max(a.x, b.x)
    iy = max(a.y, b.y)
    ix2 = min(a.x + a.w, b.x + b.w)
    iy2 = min(a.y + a.h, b.y + b.h)
    if ix2 <= ix or iy2 <= iy:
        return 0.0
    inter = (ix2 - ix) * (iy2 - iy)
    return inter / (a.area + b.area - inter)


def match_contexts(pred: list[Context], gt: list[GroundTruthContext],
                   beta: float = 0.5) -> dict[DataType, tuple[int, int, int]]:
    """Greedy one-to-one matching in descending IoU order.

    A pair matches only when IoU strictly exceeds beta and data types agree.
    Returns per-category (tp, fp, fn) for all twelve categories.
    """
    pairs = []
    for i, p in enumerate(pred):
        for j, g in enumerate(gt):
            if p.data_type is g.data_type:
                value = iou(p.bbox, g.bbox)
                if value > beta:
                    pairs.append((value, i, j))
    pairs.sort(key=lambda t: (-t[0], t[1], t[2]))

    matched_pred: set[int] = set()
    matched_gt: set[int] = set()
    counts = {dt: [0, 0, 0] for dt in DataType}
    for value, i, j in pairs:
        if i in matched_pred or j in matched_gt:
            continue
        matched_pred.add(i)
        matched_gt.add(j)
        counts[pred[i].data_type][0] += 1
    for i, p in enumerate(pred):
        if i not in matched_pred:
            counts[p.data_type][1] += 1
    for j, g in enumerate(gt):
        if j not in matched_gt:
            counts[g.data_type][2] += 1
    return {dt: tuple(c) for dt, c in counts.items()}


def coverage_rate(pred: list[Context], gt: list[GroundTruthContext],
                  beta: float = 0.5) -> float | None:
    """Fraction of ground-truth data types with at least one matching
    prediction (IoU > beta against any ground-truth box of that type).
    None when the screenshot has no ground-truth data types.
    """
    gt_types = {g.data_type for g in gt}
    if not gt_types:
        return None
    covered = {g.data_type for g in gt for p in pred
               if p.data_type is g.data_type and iou(p.bbox, g.bbox) > beta}
    return len(covered) / len(gt_types)


# --- segment similarity --------------------------------------------------------

_PHRASE_SPLIT_RE = re.compile(r"[.,;:!?\n\r]+")


def split_phrases(text: str) -> list[str]:
    return [p.strip() for p in _PHRASE_SPLIT_RE.split(text) if p.strip()]


def longest_common_substring(a: str, b: str) -> int:
    """Length of the longest common substring (dynamic programming)."""
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    best = 0
    for ca in a:
        row = [0] * (len(b) + 1)
        for j, cb in enumerate(b, start=1):
            if ca == cb:
                row[j] = prev[j - 1] + 1
                if row[j] > best:
                    best = row[j]
        prev = row
    return best


def segment_similarity(retrieved: str, ground_truth: str) -> float:
    """(1/min(n,m)) * sum over phrase pairs of lcs / min(len) (case folded).

    Phrases are split on punctuation and line breaks. The double sum can
    exceed 1.0 for multi-phrase segments; the raw value is returned.
    """
    ret_phrases = [p.lower() for p in split_phrases(retrieved)]
    gt_phrases = [p.lower() for p in split_phrases(ground_truth)]
    if not ret_phrases or not gt_phrases:
        raise DegenerateSegment("segment with zero non-empty phrases")
    total = 0.0
    for rp in ret_phrases:
        for gp in gt_phrases:
            total += longest_common_substring(rp, gp) / min(len(rp), len(gp))
    return total / min(len(ret_phrases), len(gt_phrases))


# --- dataset loading --------------------------------------------------------------

@dataclass(frozen=True)
class ScreenshotRecord:
    shot_id: str
    image_path: Path
    contexts: tuple[GroundTruthContext, ...]
    ocr_path: Path | None
    width: int
    height: int


@dataclass(frozen=True)
class AppRecord:
    app_id: str
    policy_path: Path
    segments: dict[DataType, GroundTruthSegment]
    screenshots: tuple[ScreenshotRecord, ...]


@dataclass(frozen=True)
class Dataset:
    root: Path
    apps: tuple[AppRecord, ...]


def _read_json(path: Path):
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise DatasetSchemaError(f"cannot read file: {exc}", path=str(path)) from exc
    except ValueError as exc:
        raise DatasetSchemaError(f"invalid JSON: {exc}", path=str(path)) from exc


def _load_annotation(path: Path, width: int, height: int) -> tuple[GroundTruthContext, ...]:
    data = _read_json(path)
    if not isinstance(data, dict) or "contexts" not in data:
        raise DatasetSchemaError("annotation must hold a 'contexts' list",
                                 path=str(path), field="contexts")
    contexts = []
    for k, rec in enumerate(data["contexts"]):
        try:
            raw = rec["bbox"]
            bbox = BBox(int(raw["x"]), int(raw["y"]), int(raw["w"]), int(raw["h"]))
            data_type = DataType.from_label(rec["data_type"])
            kind = rec["kind"]
        except (KeyError, TypeError, ValueError, CppgenError) as exc:
            raise DatasetSchemaError(f"bad context record #{k}: {exc}",
                                     path=str(path), field="contexts") from exc
        if kind not in (TEXTUAL, ICONIC):
            raise DatasetSchemaError(f"bad kind {kind!r} in context #{k}",
                                     path=str(path), field="kind")
        if bbox.x < 0 or bbox.y < 0 or bbox.x + bbox.w > width or bbox.y + bbox.h > height:
            raise DatasetSchemaError(f"context #{k} bbox outside image bounds",
                                     path=str(path), field="bbox")
        contexts.append(GroundTruthContext(bbox, data_type, kind))
    return tuple(contexts)


def _load_segments(path: Path) -> dict[DataType, GroundTruthSegment]:
    data = _read_json(path)
    if not isinstance(data, dict):
        raise DatasetSchemaError("segments.json must map data types to records", path=str(path))
    segments: dict[DataType, GroundTruthSegment] = {}
    for label, rec in data.items():
        try:
            data_type = DataType.from_label(label)
            found = bool(rec["found"])
            text = str(rec["text"])
        except (KeyError, TypeError, CppgenError) as exc:
            raise DatasetSchemaError(f"bad segment record {label!r}: {exc}",
                                     path=str(path), field=label) from exc
        if not found and text != FALLBACK_TEXT:
            raise DatasetSchemaError(
                f"segment {label!r} has found=false but text is not the fallback string",
                path=str(path), field=label)
        segments[data_type] = GroundTruthSegment(data_type, text, found)
    missing = [dt.value for dt in DataType if dt not in segments]
    if missing:
        raise DatasetSchemaError(f"segments.json missing data types: {', '.join(missing)}",
                                 path=str(path))
    return segments


def load_dataset(root: str | Path) -> Dataset:
    root = Path(root)
    apps_dir = root / "apps"
    if not apps_dir.is_dir():
        raise DatasetSchemaError("dataset has no apps/ directory", path=str(root))
    app_dirs = sorted(p for p in apps_dir.iterdir() if p.is_dir())
    if not app_dirs:
        raise DatasetSchemaError("dataset has no apps", path=str(apps_dir))

    apps = []
    for app_dir in app_dirs:
        policy = app_dir / "policy.html"
        if not policy.is_file():
            raise DatasetSchemaError("missing policy.html", path=str(app_dir))
        segments = _load_segments(app_dir / "segments.json")
        shots_dir = app_dir / "screenshots"
        if not shots_dir.is_dir():
            raise DatasetSchemaError("missing screenshots/ directory", path=str(app_dir))
        image_paths = sorted(list(shots_dir.glob("*.png")) + list(shots_dir.glob("*.jpg")))
        if not image_paths:
            raise DatasetSchemaError("no screenshots found", path=str(shots_dir))
        shots = []
        for image_path in image_paths:
            try:
                with Image.open(image_path) as img:
                    width, height = img.size
            except (UnidentifiedImageError, OSError) as exc:
                raise DatasetSchemaError(f"unreadable screenshot: {exc}",
                                         path=str(image_path)) from exc
            shot_id = image_path.stem
            annotation = app_dir / "annotations" / f"{shot_id}.json"
            if not annotation.is_file():
                raise DatasetSchemaError("missing annotation for screenshot",
                                         path=str(annotation))
            ocr_path = app_dir / "ocr" / f"{shot_id}.json"
            shots.append(ScreenshotRecord(
                shot_id, image_path, _load_annotation(annotation, width, height),
                ocr_path if ocr_path.is_file() else None, width, height))
        apps.append(AppRecord(app_dir.name, policy, segments, tuple(shots)))
    return Dataset(root, tuple(apps))


# --- evaluation run ------------------------------------------------------------------

def _resolve_taxonomy(config: PipelineConfig) -> Taxonomy:
    if config.taxonomy_path:
        return load_taxonomy(config.taxonomy_path)
    return load_default_taxonomy()


def _pipeline_segments(app: AppRecord, taxonomy: Taxonomy, lex: LexicalDatabase,
                       detector, config: PipelineConfig):
    try:
        doc = parse_html(RawPolicy(app.policy_path.read_bytes()))
        doc = filter_non_english(doc, detector)
        if not doc.blocks:
            raise MalformedDocument("policy is empty after language filtering")
    except OSError as exc:
        raise DatasetSchemaError(f"cannot read policy: {exc}", path=str(app.policy_path)) from exc
    except MalformedDocument as exc:
        raise DatasetSchemaError(f"unusable policy: {exc}", path=str(app.policy_path)) from exc
    return extract_segments(doc, taxonomy, lex=lex,
                            phrase_threshold=config.phrase_sim,
                            prob_threshold=config.paragraph_prob)


def _detect_for_shot(shot: ScreenshotRecord, taxonomy: Taxonomy, ports,
                     config: PipelineConfig) -> list[Context]:
    ocr_port, text_classifier, icon_classifier = ports
    ocr_boxes = load_ocr_fixture(shot.ocr_path) if shot.ocr_path else None
    return detect_contexts(
        shot.image_path, taxonomy, ocr_boxes=ocr_boxes, ocr_port=ocr_port,
        text_classifier=text_classifier, icon_classifier=icon_classifier,
        min_area_fraction=config.min_area_fraction,
        max_area_fraction=config.max_area_fraction,
        min_aspect=config.min_aspect, window=config.binarize_window,
        offset=config.binarize_offset, max_distance=config.icon_distance_threshold)


def run_eval(dataset_dir: str | Path, config: PipelineConfig | None = None,
             taxonomy: Taxonomy | None = None) -> EvalReport:
    """Run the full pipeline over a dataset and aggregate the paper metrics."""
    config = config or PipelineConfig()
    dataset = load_dataset(dataset_dir)
    taxonomy = taxonomy or _resolve_taxonomy(config)
    lex = LexicalDatabase(config.lexical_dir)
    detector = TrigramLanguageDetector()
    ports = make_ports(config)

    context_counts = {dt: [0, 0, 0] for dt in DataType}
    segment_counts = {dt: [0, 0, 0] for dt in DataType}
    coverages: list[float] = []
    n_screenshots = 0
    n_retrieved = 0
    n_successful = 0

    shot_jobs = [(app.app_id, shot) for app in dataset.apps for shot in app.screenshots]
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        detections = list(pool.map(
            lambda job: (job[0], job[1].shot_id,
                         _detect_for_shot(job[1], taxonomy, ports, config)),
            shot_jobs))
    detections.sort(key=lambda item: (item[0], item[1]))
    by_shot = {(app_id, shot_id): contexts for app_id, shot_id, contexts in detections}

    for app in dataset.apps:
        predicted = _pipeline_segments(app, taxonomy, lex, detector, config)
        for dt in DataType:
            pred_found = predicted[dt].found
            gt = app.segments[dt]
            if pred_found and gt.found:
                segment_counts[dt][0] += 1
            elif pred_found and not gt.found:
                segment_counts[dt][1] += 1
            elif not pred_found and gt.found:
                segment_counts[dt][2] += 1
            if pred_found:
                n_retrieved += 1
                similarity = segment_similarity(predicted[dt].rendered_text(), gt.text)
                if similarity > config.segment_sim:
                    n_successful += 1

        for shot in app.screenshots:
            n_screenshots += 1
            contexts = by_shot[(app.app_id, shot.shot_id)]
            gt_contexts = list(shot.contexts)
            for dt, (tp, fp, fn) in match_contexts(contexts, gt_contexts, config.iou_beta).items():
                context_counts[dt][0] += tp
                context_counts[dt][1] += fp
                context_counts[dt][2] += fn
            rate = coverage_rate(contexts, gt_contexts, config.iou_beta)
            if rate is not None:
                coverages.append(rate)

    context_rows = tuple(MetricRow(dt, *context_counts[dt]) for dt in DataType)
    segment_rows = tuple(MetricRow(dt, *segment_counts[dt]) for dt in DataType)
    return EvalReport(
        context_rows=context_rows,
        segment_rows=segment_rows,
        context_average=_average(context_rows),
        segment_average=_average(segment_rows),
        coverage_rate=sum(coverages) / len(coverages) if coverages else 0.0,
        success_rate=n_successful / n_retrieved if n_retrieved else 0.0,
        n_apps=len(dataset.apps),
        n_screenshots=n_screenshots,
        n_coverage_screenshots=len(coverages),
        n_retrieved=n_retrieved,
        n_successful=n_successful,
    )


def _average(rows) -> tuple[float, float, float]:
    """Unweighted means over categories with at least one ground-truth instance."""
    live = [r for r in rows if r.gt_instances > 0]
    if not live:
        return (0.0, 0.0, 0.0)
    n = len(live)
    return (sum(r.accuracy for r in live) / n,
            sum(r.precision for r in live) / n,
            sum(r.recall for r in live) / n)


# --- report output ----------------------------------------------------------------------

def report_to_records(report: EvalReport) -> str:
    lines = []
    for section, rows, avg in (("contexts", report.context_rows, report.context_average),
                               ("segments", report.segment_rows, report.segment_average)):
        for row in rows:
            lines.append(json.dumps({
                "section": section, "category": row.category.value,
                "tp": row.tp, "fp": row.fp, "fn": row.fn,
                "accuracy": row.accuracy, "precision": row.precision,
                "recall": row.recall,
            }, sort_keys=True))
        lines.append(json.dumps({
            "section": section, "category": "Average",
            "accuracy": avg[0], "precision": avg[1], "recall": avg[2],
        }, sort_keys=True))
    lines.append(json.dumps({
        "section": "summary",
        "coverage_rate": report.coverage_rate,
        "success_rate": report.success_rate,
        "n_apps": report.n_apps,
        "n_screenshots": report.n_screenshots,
        "n_coverage_screenshots": report.n_coverage_screenshots,
        "n_retrieved": report.n_retrieved,
        "n_successful": report.n_successful,
    }, sort_keys=True))
    return "\n".join(lines) + "\n"


def render_table(report: EvalReport) -> str:
    def section(title, rows, avg):
        out = [title,
               f"{'Category':<16}{'TP':>5}{'FP':>5}{'FN':>5}{'Accuracy':>10}{'Precision':>11}{'Recall':>8}"]
        for row in rows:
            out.append(f"{row.category.value:<16}{row.tp:>5}{row.fp:>5}{row.fn:>5}"
                       f"{row.accuracy:>10.3f}{row.precision:>11.3f}{row.recall:>8.3f}")
        out.append(f"{'Average':<16}{'':>5}{'':>5}{'':>5}"
                   f"{avg[0]:>10.3f}{avg[1]:>11.3f}{avg[2]:>8.3f}")
        return out

    lines = section("Context detection", report.context_rows, report.context_average)
    lines.append("")
    lines += section("Segment retrieval", report.segment_rows, report.segment_average)
    lines.append("")
    lines.append(f"Context coverage rate: {report.coverage_rate:.3f} "
                 f"(over {report.n_coverage_screenshots} screenshots)")
    lines.append(f"Segment success rate:  {report.success_rate:.3f} "
                 f"({report.n_successful}/{report.n_retrieved} retrieved)")
    return "\n".join(lines) + "\n"


def render_figures(report: EvalReport, out_dir: str | Path) -> list[Path]:
    """Bar-chart figures for the per-category metrics and the summary rates."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    import numpy as np

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    for name, rows, avg in (("context_metrics", report.context_rows, report.context_average),
                            ("segment_metrics", report.segment_rows, report.segment_average)):
        fig, ax = plt.subplots(figsize=(10, 4))
        labels = [r.category.value for r in rows]
        x = np.arange(len(labels))
        for k, (metric, getter) in enumerate((("accuracy", lambda r: r.accuracy),
                                              ("precision", lambda r: r.precision),
                                              ("recall", lambda r: r.recall))):
            ax.bar(x + (k - 1) * 0.27, [getter(r) for r in rows], width=0.25, label=metric)
        ax.set_xticks(x, labels, rotation=45, ha="right", fontsize=8)
        ax.set_ylim(0, 1.05)
        ax.set_title(f"{name.replace('_', ' ')} "
                     f"(avg acc {avg[0]:.2f} / prec {avg[1]:.2f} / rec {avg[2]:.2f})")
        ax.legend(fontsize=8)
        fig.tight_layout()
        path = out_dir / f"{name}.png"
        fig.savefig(path, dpi=110)
        plt.close(fig)
        written.append(path)

    fig, ax = plt.subplots(figsize=(4, 4))
    ax.bar(["coverage", "success"], [report.coverage_rate, report.success_rate],
           color=["#4363d8", "#3cb44b"], width=0.5)
    ax.set_ylim(0, 1.05)
    ax.set_title("Coverage and success rates")
    for i, value in enumerate((report.coverage_rate, report.success_rate)):
        ax.text(i, value + 0.02, f"{value:.3f}", ha="center", fontsize=9)
    fig.tight_layout()
    path = out_dir / "summary.png"
    fig.savefig(path, dpi=110)
    plt.close(fig)
    written.append(path)
    return written
