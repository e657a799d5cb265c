"""HTTP clients for the optional model-service endpoints.

Each client speaks one wire endpoint and raises PortUnavailable on transport
failure so callers can fall back to the built-in heuristics.
"""

from __future__ import annotations

import base64
import io

import numpy as np
import requests
from PIL import Image

from .detect import BBox, TextBox
from .errors import PortUnavailable

DEFAULT_TIMEOUT = 10.0


def _post(url: str, payload: dict, timeout: float) -> dict:
    try:
        response = requests.post(url, json=payload, timeout=timeout)
    except requests.RequestException as exc:
        raise PortUnavailable(f"cannot reach {url}: {exc}") from exc
    if response.status_code >= 500:
        raise PortUnavailable(f"{url} returned {response.status_code}")
    if response.status_code != 200:
        raise PortUnavailable(f"{url} rejected the request: {response.status_code} {response.text[:200]}")
    try:
        return response.json()
    except ValueError as exc:
        raise PortUnavailable(f"{url} returned non-JSON body") from exc


def _image_to_b64(image) -> str:
    if isinstance(image, (bytes, bytearray)):
        raw = bytes(image)
    elif isinstance(image, np.ndarray):
        buf = io.BytesIO()
        Image.fromarray(image.astype(np.uint8)).save(buf, format="PNG")
        raw = buf.getvalue()
    elif isinstance(image, Image.Image):
        buf = io.BytesIO()
        image.save(buf, format="PNG")
        raw = buf.getvalue()
    else:
        raw = open(image, "rb").read()
    return base64.b64encode(raw).decode("ascii")


class RemoteOcr:
    """POST /v1/ocr {image} -> {boxes: [{x,y,w,h,text,confidence}]}"""

    def __init__(self, url: str, timeout: float = DEFAULT_TIMEOUT):
        self.url = url.rstrip("/")
        self.timeout = timeout

    def recognize(self, image) -> list[TextBox]:
        data = _post(self.url, {"image": _image_to_b64(image)}, self.timeout)
        boxes = []
        for rec in data.get("boxes", []):
            boxes.append(TextBox(
                BBox(int(rec["x"]), int(rec["y"]), int(rec["w"]), int(rec["h"])),
                str(rec["text"]), float(rec.get("confidence", 1.0))))
        return boxes


class RemoteTextClassifier:
    """POST /v1/classify-text {text, data_types} -> {label}"""

    def __init__(self, url: str, timeout: float = DEFAULT_TIMEOUT):
        self.url = url.rstrip("/")
        self.timeout = timeout

    def classify(self, text: str, entries: list[tuple[str, str]]) -> str:
        payload = {
            "text": text,
            "data_types": [{"name": name, "description": desc} for name, desc in entries],
        }
        data = _post(self.url, payload, self.timeout)
        return str(data.get("label", ""))


class RemoteIconClassifier:
    """POST /v1/classify-icon {crops} -> {labels: [{icon_class, score}]}"""

    def __init__(self, url: str, timeout: float = DEFAULT_TIMEOUT):
        self.url = url.rstrip("/")
        self.timeout = timeout

    def classify(self, crop: np.ndarray) -> tuple[str, float] | None:
        data = _post(self.url, {"crops": [_image_to_b64(crop)]}, self.timeout)
        labels = data.get("labels", [])
        if not labels:
            return None
        first = labels[0]
        return str(first["icon_class"]), float(first.get("score", 0.0))


def make_ports(config):
    """Instantiate remote clients for whichever endpoints are configured."""
    ocr = RemoteOcr(config.ocr_url) if config.ocr_url else None
    text = RemoteTextClassifier(config.text_classifier_url) if config.text_classifier_url else None
    icon = RemoteIconClassifier(config.icon_classifier_url) if config.icon_classifier_url else None
    return ocr, text, icon
