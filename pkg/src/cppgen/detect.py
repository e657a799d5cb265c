"""Privacy-related context detection on screenshots.

Texts come from an OCR port (remote service or a fixture file) and are
classified to data types; icon candidates are proposed with adaptive-mean
binarization plus connected components, filtered by the four survivor rules
(max area, min area, aspect ratio, OCR overlap), and classified either
remotely or by nearest neighbor over the shipped exemplar crops.
"""

from __future__ import annotations

import io
import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError
from scipy import ndimage

from .errors import ImageDecodeError, PortUnavailable
from .lexical import DATA_DIR
from .taxonomy import DataType, IconClass, Taxonomy, keyword_scan

log = logging.getLogger("cppgen")

TEXTUAL = "textual"
ICONIC = "iconic"

EXEMPLAR_DIR = DATA_DIR / "icon_exemplars"
_FEATURE_SIZE = 32
_EIGHT = np.ones((3, 3), dtype=int)


@dataclass(frozen=True)
class BBox:
    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.w <= 0 or self.h <= 0:
            raise ValueError(f"degenerate box: {self}")

    @property
    def area(self) -> int:
        return self.w * self.h

    def intersects(self, other: "BBox") -> bool:
        return (self.x < other.x + other.w and other.x < self.x + self.w
                and self.y < other.y + other.h and other.y < self.y + self.h)


@dataclass(frozen=True)
class TextBox:
    bbox: BBox
    text: str
    confidence: float = 1.0


@dataclass(frozen=True)
class IconCandidate:
    bbox: BBox
    area_fraction: float
    aspect_ratio: float


@dataclass(frozen=True)
class Context:
    bbox: BBox
    data_type: DataType
    kind: str
    evidence: str
    score: float


def load_image(source) -> np.ndarray:
    """Decode PNG/JPEG bytes or a path into a grayscale uint8 array."""
    try:
        if isinstance(source, np.ndarray):
            img = source
            return img.astype(np.uint8) if img.ndim == 2 else np.asarray(
                Image.fromarray(img).convert("L"))
        if isinstance(source, Image.Image):
            return np.asarray(source.convert("L"))
        if isinstance(source, (bytes, bytearray)):
            return np.asarray(Image.open(io.BytesIO(source)).convert("L"))
        return np.asarray(Image.open(source).convert("L"))
    except (UnidentifiedImageError, OSError, ValueError) as exc:
        raise ImageDecodeError(f"cannot decode image: {exc}") from exc


def propose_regions(gray: np.ndarray, *, window: int = 31, offset: float = 10.0) -> list[BBox]:
    """Connected dark components under an adaptive mean threshold."""
    blurred = ndimage.uniform_filter(gray.astype(np.float64), size=window)
    binary = gray < blurred - offset
    labels, count = ndimage.label(binary, structure=_EIGHT)
    boxes = []
    for sl in ndimage.find_objects(labels):
        if sl is None:
            continue
        ys, xs = sl
        boxes.append(BBox(xs.start, ys.start, xs.stop - xs.start, ys.stop - ys.start))
    return boxes


def localize_icon_candidates(gray: np.ndarray, ocr_boxes: list[TextBox], *,
                             min_area_fraction: float = 0.05,
                             max_area_fraction: float = 0.10,
                             min_aspect: float = 0.6,
                             window: int = 31, offset: float = 10.0) -> list[IconCandidate]:
    """Propose regions, then keep only those passing the four survivor rules:
    area not above the max fraction, not below the min fraction, aspect ratio
    not below the floor, and no positive-area overlap with any OCR box.
    """
    height, width = gray.shape
    image_area = float(width * height)
    survivors = []
    for box in propose_regions(gray, window=window, offset=offset):
        area_fraction = box.area / image_area
        aspect = box.w / box.h
        if area_fraction > max_area_fraction:
            continue
        if area_fraction < min_area_fraction:
            continue
        if aspect < min_aspect:
            continue
        if any(box.intersects(tb.bbox) for tb in ocr_boxes):
            continue
        survivors.append(IconCandidate(box, area_fraction, aspect))
    survivors.sort(key=lambda c: (c.bbox.y, c.bbox.x))
    return survivors


# --- text classification -----------------------------------------------------

def parse_text_type_response(response: str, taxonomy: Taxonomy) -> DataType | None:
    """Map a classifier reply onto a data type, case-insensitively."""
    low = response.strip().lower()
    if not low or "not relevant" in low:
        return None
    compact = low.replace(" ", "").replace("_", "").replace("-", "")
    for entry in taxonomy:
        if entry.data_type.value.lower() == compact:
            return entry.data_type
    for entry in taxonomy:
        if entry.data_type.value.lower() in compact:
            return entry.data_type
    return None


# The bare sharing verb fires on generic UI text ("Share your location");
# when any other keyword also hits, those win over it.
_DEMOTED_KEYWORDS = frozenset({"share"})


def classify_text_type(text: str, classifier, taxonomy: Taxonomy) -> DataType | None:
    """Classify OCR text to a data type.

    With a remote classifier port the reply is parsed against the data-type
    names; without one (or when the port is down) the keyword scan decides:
    the earliest hit's data type wins (demoted keywords last), no hit means
    not privacy-related.
    """
    if classifier is not None:
        try:
            entries = [(e.data_type.value, e.description) for e in taxonomy]
            return parse_text_type_response(classifier.classify(text, entries), taxonomy)
        except PortUnavailable as exc:
            log.warning("text classifier unavailable, using keyword fallback: %s", exc)
    hits = keyword_scan(text, taxonomy)
    if not hits:
        return None
    return min(hits, key=lambda h: (h.keyword in _DEMOTED_KEYWORDS, h.start, h.end,
                                    h.data_type.ordinal)).data_type


# --- icon classification -------------------------------------------------------

def _feature(gray: np.ndarray) -> np.ndarray:
    img = Image.fromarray(gray.astype(np.uint8)).resize(
        (_FEATURE_SIZE, _FEATURE_SIZE), Image.BILINEAR)
    return np.asarray(img, dtype=np.float64) / 255.0


class ExemplarIndex:
    """Labeled exemplar crops for nearest-neighbor icon classification.

    The directory holds one subdirectory per icon class, each with the
    class's exemplar images.
    """

    def __init__(self, directory: str | Path | None = None):
        directory = Path(directory) if directory else EXEMPLAR_DIR
        self.items: list[tuple[str, np.ndarray]] = []
        for class_dir in sorted(p for p in directory.iterdir() if p.is_dir()):
            for image_path in sorted(class_dir.glob("*.png")):
                gray = np.asarray(Image.open(image_path).convert("L"))
                self.items.append((class_dir.name, _feature(gray)))
        if not self.items:
            raise FileNotFoundError(f"no exemplar images under {directory}")

    def nearest(self, crop_gray: np.ndarray) -> tuple[str, float]:
        feat = _feature(crop_gray)
        best_name, best_dist = "", float("inf")
        for name, ref in self.items:
            dist = float(np.sqrt(np.mean((feat - ref) ** 2)))
            if dist < best_dist:
                best_name, best_dist = name, dist
        return best_name, best_dist


def classify_icon(crop_gray: np.ndarray, classifier, taxonomy: Taxonomy, *,
                  exemplars: ExemplarIndex | None = None,
                  max_distance: float = 0.25) -> tuple[IconClass, DataType, float] | None:
    """Classify an icon crop; classes outside the taxonomy mapping yield None."""
    if classifier is not None:
        try:
            result = classifier.classify(crop_gray)
            if result is None:
                return None
            class_name, score = result
            mapped = taxonomy.icon_class_by_name(class_name)
            if mapped is None:
                return None
            icon_class, data_type = mapped
            return icon_class, data_type, float(score)
        except PortUnavailable as exc:
            log.warning("icon classifier unavailable, using exemplar fallback: %s", exc)
    exemplars = exemplars or _default_exemplars()
    class_name, dist = exemplars.nearest(crop_gray)
    if dist > max_distance:
        return None
    mapped = taxonomy.icon_class_by_name(class_name)
    if mapped is None:
        return None
    icon_class, data_type = mapped
    return icon_class, data_type, 1.0 - dist


_EXEMPLAR_CACHE: ExemplarIndex | None = None


def _default_exemplars() -> ExemplarIndex:
    global _EXEMPLAR_CACHE
    if _EXEMPLAR_CACHE is None:
        _EXEMPLAR_CACHE = ExemplarIndex()
    return _EXEMPLAR_CACHE


# --- OCR fixtures ---------------------------------------------------------------

def load_ocr_fixture(path: str | Path) -> list[TextBox]:
    """Fixture format: {"boxes": [{x, y, w, h, text, confidence}, ...]}."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    boxes = []
    for rec in data.get("boxes", []):
        boxes.append(TextBox(BBox(int(rec["x"]), int(rec["y"]), int(rec["w"]), int(rec["h"])),
                             str(rec["text"]), float(rec.get("confidence", 1.0))))
    return boxes


# --- full detection ---------------------------------------------------------------

def detect_contexts(image, taxonomy: Taxonomy, *, ocr_boxes: list[TextBox] | None = None,
                    ocr_port=None, text_classifier=None, icon_classifier=None,
                    exemplars: ExemplarIndex | None = None,
                    min_area_fraction: float = 0.05, max_area_fraction: float = 0.10,
                    min_aspect: float = 0.6, window: int = 31, offset: float = 10.0,
                    max_distance: float = 0.25) -> list[Context]:
    """Union of textual and iconic contexts, deduplicated by (bbox, data type).

    OCR text comes from the supplied fixture boxes when given; otherwise the
    OCR port is required and its unavailability is fatal.
    """
    gray = load_image(image)
    if ocr_boxes is None:
        if ocr_port is None:
            raise PortUnavailable("no OCR fixture supplied and no OCR endpoint configured")
        ocr_boxes = ocr_port.recognize(image)

    contexts: list[Context] = []
    for box in ocr_boxes:
        data_type = classify_text_type(box.text, text_classifier, taxonomy)
        if data_type is not None:
            contexts.append(Context(box.bbox, data_type, TEXTUAL, box.text, box.confidence))

    candidates = localize_icon_candidates(
        gray, ocr_boxes, min_area_fraction=min_area_fraction,
        max_area_fraction=max_area_fraction, min_aspect=min_aspect,
        window=window, offset=offset)
    for cand in candidates:
        b = cand.bbox
        crop = gray[b.y:b.y + b.h, b.x:b.x + b.w]
        result = classify_icon(crop, icon_classifier, taxonomy,
                               exemplars=exemplars, max_distance=max_distance)
        if result is not None:
            icon_class, data_type, score = result
            contexts.append(Context(b, data_type, ICONIC, icon_class.name, score))

    seen = set()
    unique = []
    for ctx in contexts:
        key = (ctx.bbox, ctx.data_type)
        if key not in seen:
            seen.add(key)
            unique.append(ctx)
    return unique
