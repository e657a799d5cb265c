"""Command-line interface: extract, detect, generate, eval, validate-dataset.

Exit codes: 0 success, 2 malformed policy document, 3 undecodable image,
4 OCR unavailable with no fixture, 5 dataset schema violation, 1 any other
pipeline error.
"""

from __future__ import annotations

import dataclasses
import json
import logging
import sys
from pathlib import Path

import click

from .config import PipelineConfig
from .detect import detect_contexts, load_ocr_fixture
from .errors import (CppgenError, DatasetSchemaError, ImageDecodeError,
                     MalformedDocument, PortUnavailable)
from .evalharness import (load_dataset, render_figures, render_table,
                          report_to_records, run_eval)
from .ingest import RawPolicy, blocks_to_records, filter_non_english, parse_html
from .language import TrigramLanguageDetector
from .lexical import LexicalDatabase
from .ports import make_ports
from .present import MARKUP, RECORDS, build_cpp, render_report, save_overlay
from .segmenter import (extract_segments, segments_from_records,
                        segments_to_records)
from .taxonomy import load_default_taxonomy, load_taxonomy

log = logging.getLogger("cppgen")

_EXIT_CODES = (
    (MalformedDocument, 2),
    (ImageDecodeError, 3),
    (PortUnavailable, 4),
    (DatasetSchemaError, 5),
)


def _fail(exc: CppgenError):
    click.echo(f"error: {exc}", err=True)
    for cls, code in _EXIT_CODES:
        if isinstance(exc, cls):
            sys.exit(code)
    sys.exit(1)


def _load_config(config_path, overrides) -> PipelineConfig:
    config = PipelineConfig.from_file(config_path) if config_path else PipelineConfig()
    updates = {k: v for k, v in overrides.items() if v is not None}
    if updates:
        config = dataclasses.replace(config, **updates)
    return config.with_env_endpoints()


def _taxonomy(config: PipelineConfig):
    return load_taxonomy(config.taxonomy_path) if config.taxonomy_path else load_default_taxonomy()


_THRESHOLD_OPTIONS = [
    ("--paragraph-prob", "paragraph_prob"),
    ("--phrase-sim", "phrase_sim"),
    ("--iou-beta", "iou_beta"),
    ("--segment-sim", "segment_sim"),
    ("--min-area-fraction", "min_area_fraction"),
    ("--max-area-fraction", "max_area_fraction"),
    ("--min-aspect", "min_aspect"),
]


def _common_options(fn):
    fn = click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
                      default=None, help="JSON config file.")(fn)
    fn = click.option("--out", "output_dir", type=click.Path(file_okay=False), default=None,
                      help="Output directory (default from config).")(fn)
    fn = click.option("--taxonomy", "taxonomy_path", type=click.Path(exists=True, dir_okay=False),
                      default=None, help="Taxonomy JSON overriding the built-in table.")(fn)
    fn = click.option("--ocr-url", default=None, help="OCR service endpoint.")(fn)
    fn = click.option("--text-classifier-url", default=None)(fn)
    fn = click.option("--icon-classifier-url", default=None)(fn)
    for flag, name in _THRESHOLD_OPTIONS:
        fn = click.option(flag, name, type=float, default=None)(fn)
    return fn


def _gather(kwargs) -> tuple[PipelineConfig, Path]:
    names = [name for _, name in _THRESHOLD_OPTIONS] + [
        "taxonomy_path", "ocr_url", "text_classifier_url", "icon_classifier_url"]
    overrides = {name: kwargs.pop(name) for name in names}
    config_path = kwargs.pop("config_path")
    output_dir = kwargs.pop("output_dir")
    config = _load_config(config_path, overrides)
    out = Path(output_dir) if output_dir else Path(config.output_dir)
    return config, out


@click.group()
@click.option("--verbose", is_flag=True, help="Log fallback activations and progress.")
def main(verbose):
    """Generate and evaluate contextual privacy policies for app screenshots."""
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s")


@main.command()
@click.argument("policy_html", type=click.Path(exists=True, dir_okay=False))
@click.option("--app-id", default="", help="Identifier recorded in the output.")
@_common_options
def extract(policy_html, app_id, **kwargs):
    """Extract per-data-type policy segments from a policy HTML file."""
    config, out = _gather(kwargs)
    try:
        taxonomy = _taxonomy(config)
        doc = parse_html(RawPolicy(Path(policy_html).read_bytes(), source_uri=policy_html))
        doc = filter_non_english(doc, TrigramLanguageDetector())
        if not doc.blocks:
            raise MalformedDocument("policy has no English text blocks")
        segments = extract_segments(
            doc, taxonomy, lex=LexicalDatabase(config.lexical_dir),
            phrase_threshold=config.phrase_sim, prob_threshold=config.paragraph_prob)
    except CppgenError as exc:
        _fail(exc)
    out.mkdir(parents=True, exist_ok=True)
    (out / "blocks.jsonl").write_text(blocks_to_records(doc), encoding="utf-8")
    (out / "segments.jsonl").write_text(
        segments_to_records(app_id or Path(policy_html).stem, segments), encoding="utf-8")
    found = sum(1 for seg in segments.values() if seg.found)
    click.echo(f"wrote {out / 'segments.jsonl'} ({found}/12 data types found)")


def _detect(screenshot, ocr_fixture, config, taxonomy):
    ocr_boxes = load_ocr_fixture(ocr_fixture) if ocr_fixture else None
    ocr_port, text_classifier, icon_classifier = make_ports(config)
    return detect_contexts(
        Path(screenshot), taxonomy, ocr_boxes=ocr_boxes, ocr_port=ocr_port,
        text_classifier=text_classifier, icon_classifier=icon_classifier,
        min_area_fraction=config.min_area_fraction,
        max_area_fraction=config.max_area_fraction,
        min_aspect=config.min_aspect, window=config.binarize_window,
        offset=config.binarize_offset, max_distance=config.icon_distance_threshold)


@main.command()
@click.argument("screenshot", type=click.Path(exists=True, dir_okay=False))
@click.option("--ocr-fixture", type=click.Path(exists=True, dir_okay=False), default=None,
              help="OCR fixture JSON instead of a live OCR endpoint.")
@_common_options
def detect(screenshot, ocr_fixture, **kwargs):
    """Detect privacy-related contexts on one screenshot."""
    config, out = _gather(kwargs)
    try:
        contexts = _detect(screenshot, ocr_fixture, config, _taxonomy(config))
    except CppgenError as exc:
        _fail(exc)
    out.mkdir(parents=True, exist_ok=True)
    lines = [json.dumps({
        "bbox": {"x": c.bbox.x, "y": c.bbox.y, "w": c.bbox.w, "h": c.bbox.h},
        "data_type": c.data_type.value, "kind": c.kind,
        "evidence": c.evidence, "score": c.score}, sort_keys=True) for c in contexts]
    (out / "contexts.jsonl").write_text("\n".join(lines) + ("\n" if lines else ""),
                                        encoding="utf-8")
    click.echo(f"wrote {out / 'contexts.jsonl'} ({len(contexts)} contexts)")


@main.command()
@click.argument("screenshot", type=click.Path(exists=True, dir_okay=False))
@click.option("--policy", "policy_html", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Policy HTML to extract segments from.")
@click.option("--segments", "segments_file", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Precomputed segments.jsonl (from `extract`).")
@click.option("--ocr-fixture", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--screenshot-id", default=None, help="Identifier recorded in the bundle.")
@_common_options
def generate(screenshot, policy_html, segments_file, ocr_fixture, screenshot_id, **kwargs):
    """Produce a contextual privacy policy bundle, report and overlay."""
    config, out = _gather(kwargs)
    if (policy_html is None) == (segments_file is None):
        click.echo("error: provide exactly one of --policy or --segments", err=True)
        sys.exit(1)
    try:
        taxonomy = _taxonomy(config)
        if policy_html:
            doc = parse_html(RawPolicy(Path(policy_html).read_bytes(), source_uri=policy_html))
            doc = filter_non_english(doc, TrigramLanguageDetector())
            if not doc.blocks:
                raise MalformedDocument("policy has no English text blocks")
            segments = extract_segments(
                doc, taxonomy, lex=LexicalDatabase(config.lexical_dir),
                phrase_threshold=config.phrase_sim, prob_threshold=config.paragraph_prob)
        else:
            _, segments = segments_from_records(Path(segments_file).read_text(encoding="utf-8"))
        contexts = _detect(screenshot, ocr_fixture, config, taxonomy)
        bundle = build_cpp(contexts, segments,
                           screenshot_id=screenshot_id or Path(screenshot).stem)
        out.mkdir(parents=True, exist_ok=True)
        (out / "bundle.json").write_bytes(render_report(bundle, RECORDS))
        (out / "report.html").write_bytes(render_report(bundle, MARKUP))
        save_overlay(Path(screenshot), bundle, out / "overlay.png")
    except CppgenError as exc:
        _fail(exc)
    click.echo(f"wrote bundle.json, report.html, overlay.png to {out} "
               f"({len(bundle.annotations)} annotations)")


@main.command("eval")
@click.argument("dataset_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--no-figures", is_flag=True, help="Skip rendering metric figures.")
@_common_options
def eval_cmd(dataset_dir, no_figures, **kwargs):
    """Evaluate the pipeline against an annotated dataset."""
    config, out = _gather(kwargs)
    try:
        report = run_eval(dataset_dir, config)
    except CppgenError as exc:
        _fail(exc)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.jsonl").write_text(report_to_records(report), encoding="utf-8")
    table = render_table(report)
    (out / "report.txt").write_text(table, encoding="utf-8")
    if not no_figures:
        for path in render_figures(report, out):
            log.info("figure written: %s", path)
    click.echo(table, nl=False)
    click.echo(f"report files in {out}")


@main.command("validate-dataset")
@click.argument("dataset_dir", type=click.Path(exists=True, file_okay=False))
def validate_dataset(dataset_dir):
    """Check a dataset directory against the expected schema."""
    try:
        dataset = load_dataset(dataset_dir)
    except CppgenError as exc:
        _fail(exc)
    shots = sum(len(app.screenshots) for app in dataset.apps)
    contexts = sum(len(s.contexts) for app in dataset.apps for s in app.screenshots)
    click.echo(f"ok: {len(dataset.apps)} apps, {shots} screenshots, {contexts} contexts")


if __name__ == "__main__":
    main()
