"""Endpoint backends: built-in stubs plus loadable model backends.

Stubs keep the wire contract testable without trained models:
- OCR echoes a fixture keyed by the SHA-256 of the posted image bytes;
- text classification applies the pipeline's keyword fallback rule;
- icon classification returns nearest-exemplar labels.

A model backend is a dotted path "package.module:callable"; the callable
receives the same arguments as the stub and returns the same shape. Load
failures surface as BackendUnavailable (HTTP 503).
"""

from __future__ import annotations

import base64
import binascii
import hashlib
import importlib
import io
import json
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from cppgen.detect import ExemplarIndex, classify_text_type
from cppgen.taxonomy import load_default_taxonomy

TAXONOMY = load_default_taxonomy()


class BackendUnavailable(Exception):
    """Configured model backend cannot be loaded or invoked."""


class BadInput(ValueError):
    """Request payload decodes to something unusable (HTTP 400)."""


def decode_b64(data: str) -> bytes:
    try:
        return base64.b64decode(data, validate=True)
    except (binascii.Error, ValueError) as exc:
        raise BadInput(f"invalid base64 image payload: {exc}") from exc


def decode_image(raw: bytes) -> np.ndarray:
    try:
        return np.asarray(Image.open(io.BytesIO(raw)).convert("L"))
    except (UnidentifiedImageError, OSError) as exc:
        raise BadInput(f"payload is not a decodable image: {exc}") from exc


# --- stubs -------------------------------------------------------------------

def stub_ocr(raw: bytes, fixture_dir: str | None) -> list[dict]:
    """Echo the fixture stored for this image hash; unknown hashes are empty."""
    decode_image(raw)  # reject non-images even when no fixture matches
    if not fixture_dir:
        return []
    digest = hashlib.sha256(raw).hexdigest()
    path = Path(fixture_dir) / f"{digest}.json"
    if not path.is_file():
        return []
    data = json.loads(path.read_text(encoding="utf-8"))
    return [
        {"x": int(b["x"]), "y": int(b["y"]), "w": int(b["w"]), "h": int(b["h"]),
         "text": str(b["text"]), "confidence": float(b.get("confidence", 1.0))}
        for b in data.get("boxes", [])
    ]


def stub_classify_text(text: str, data_types: list[tuple[str, str]]) -> str:
    """Same keyword rule as the pipeline fallback, restricted to the request's
    data-type names."""
    result = classify_text_type(text, None, TAXONOMY)
    if result is None:
        return "not relevant"
    requested = {name.lower() for name, _ in data_types}
    return result.value if result.value.lower() in requested else "not relevant"


_EXEMPLARS: ExemplarIndex | None = None


def stub_classify_icon(raws: list[bytes]) -> list[dict]:
    global _EXEMPLARS
    if _EXEMPLARS is None:
        _EXEMPLARS = ExemplarIndex()
    labels = []
    for raw in raws:
        gray = decode_image(raw)
        name, dist = _EXEMPLARS.nearest(gray)
        labels.append({"icon_class": name, "score": max(0.0, min(1.0, 1.0 - dist))})
    return labels


# --- model backend loading ------------------------------------------------------

def resolve_backend(spec: str):
    """Import "package.module:callable"; failures raise BackendUnavailable."""
    module_name, _, attr = spec.partition(":")
    if not module_name or not attr:
        raise BackendUnavailable(f"bad backend spec {spec!r}, want 'module:callable'")
    try:
        module = importlib.import_module(module_name)
        backend = getattr(module, attr)
    except (ImportError, AttributeError) as exc:
        raise BackendUnavailable(f"cannot load backend {spec!r}: {exc}") from exc
    if not callable(backend):
        raise BackendUnavailable(f"backend {spec!r} is not callable")
    return backend
