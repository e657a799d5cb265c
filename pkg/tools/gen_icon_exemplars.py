#!/usr/bin/env python3
"""Draw the labeled icon exemplar set used by the fallback icon classifier.

Three 48x48 grayscale variants per icon class, under
src/cppgen/data/icon_exemplars/<Class>/<k>.png. Every glyph is drawn inside a
2px border frame and connected to it, so a connected-component proposal over
a pasted exemplar recovers exactly the paste rectangle.

The script verifies each exemplar is a single 8-connected ink component that
spans the full canvas, and that nearest-neighbor matching separates classes.
"""

import sys
from pathlib import Path

import numpy as np
from PIL import Image, ImageDraw
from scipy import ndimage

SIZE = 48
OUT = Path(__file__).resolve().parent.parent / "src" / "cppgen" / "data" / "icon_exemplars"


def _canvas():
    img = Image.new("L", (SIZE, SIZE), 255)
    d = ImageDraw.Draw(img)
    d.rectangle([0, 0, SIZE - 1, SIZE - 1], outline=0, width=2)
    return img, d


def call(d, v):
    w = 5 + (v == 1)
    d.line([(2, 45), (45, 2)], fill=0, width=w)
    d.ellipse([4 + v, 36 - v, 12 + v, 44 - v], fill=0)
    d.ellipse([35 - v, 5 + v, 43 - v, 13 + v], fill=0)


def email(d, v):
    d.rectangle([8, 14 + v, 39, 33 + v], outline=0, width=3)
    d.line([(8, 14 + v), (24, 26 + v)], fill=0, width=3)
    d.line([(39, 14 + v), (24, 26 + v)], fill=0, width=3)
    d.line([(1, 24), (8, 24)], fill=0, width=3)


def avatar(d, v):
    d.ellipse([17, 5 + v, 30, 18 + v], outline=0, width=3)
    d.line([(24, 1), (24, 7)], fill=0, width=3)
    d.line([(24, 18 + v), (24, 27)], fill=0, width=3)
    d.ellipse([11 - v, 26, 36 + v, 44], outline=0, width=3)


def group(d, v):
    d.ellipse([7, 9 + v, 17, 19 + v], outline=0, width=2)
    d.ellipse([30, 9 + v, 40, 19 + v], outline=0, width=2)
    d.ellipse([5, 25, 20, 41], outline=0, width=2)
    d.ellipse([27, 25, 42, 41], outline=0, width=2)
    d.line([(12, 1), (12, 11 + v)], fill=0, width=2)
    d.line([(35, 1), (35, 11 + v)], fill=0, width=2)
    d.line([(12, 19 + v), (12, 27)], fill=0, width=2)
    d.line([(35, 19 + v), (35, 27)], fill=0, width=2)
    d.line([(18, 32), (29, 32)], fill=0, width=2)


def follow(d, v):
    d.ellipse([8, 7 + v, 19, 18 + v], outline=0, width=2)
    d.ellipse([4, 24, 23, 42], outline=0, width=2)
    d.line([(13, 1), (13, 9 + v)], fill=0, width=2)
    d.line([(13, 18 + v), (13, 26)], fill=0, width=2)
    d.line([(33, 13), (33, 31)], fill=0, width=3 + (v == 2))
    d.line([(24, 22), (42, 22)], fill=0, width=3)
    d.line([(17, 13 + v), (33, 22)], fill=0, width=2)


def location_crosshair(d, v):
    r = 12 + v
    d.ellipse([24 - r, 24 - r, 24 + r, 24 + r], outline=0, width=3)
    d.line([(24, 1), (24, 46)], fill=0, width=3)
    d.line([(1, 24), (46, 24)], fill=0, width=3)


def location(d, v):
    d.ellipse([13, 5 + v, 34, 26 + v], outline=0, width=3)
    d.line([(16, 24 + v), (24, 44)], fill=0, width=3)
    d.line([(32, 24 + v), (24, 44)], fill=0, width=3)
    d.line([(14, 16 + v), (33, 16 + v)], fill=0, width=2)
    d.line([(24, 40), (24, 46)], fill=0, width=3)


def photo(d, v):
    d.rectangle([6, 10, 41, 37], outline=0, width=3)
    d.ellipse([28 - v, 11, 36 - v, 19], outline=0, width=2)
    d.line([(9, 34), (18, 22 + v), (27, 34)], fill=0, width=3)
    d.line([(25, 34), (32, 25 + v), (39, 34)], fill=0, width=2)
    d.line([(1, 24), (6, 24)], fill=0, width=3)


def videocam(d, v):
    d.rectangle([6, 14 + v, 30, 33 + v], outline=0, width=3)
    d.line([(30, 19 + v), (42, 10 + v)], fill=0, width=3)
    d.line([(42, 10 + v), (42, 37 + v)], fill=0, width=3)
    d.line([(42, 37 + v), (30, 28 + v)], fill=0, width=3)
    d.line([(1, 24), (6, 24)], fill=0, width=3)


def wallpaper(d, v):
    d.rectangle([6, 6, 41, 41], outline=0, width=3)
    d.line([(6, 41), (41, 6)], fill=0, width=2)
    d.ellipse([8 + v, 8, 16 + v, 16], outline=0, width=2)
    d.line([(6, 30 + v), (20, 41)], fill=0, width=2)
    d.line([(1, 24), (6, 24)], fill=0, width=3)


def microphone(d, v):
    d.ellipse([18, 5 + v, 29, 26 + v], outline=0, width=3)
    d.ellipse([12, 13 + v, 35, 33 + v], outline=0, width=2)
    d.line([(24, 33 + v), (24, 43)], fill=0, width=3)
    d.line([(15, 43), (32, 43)], fill=0, width=3)
    d.line([(24, 43), (24, 46)], fill=0, width=3)


def cart(d, v):
    d.line([(1, 10), (12, 10)], fill=0, width=3)
    d.line([(12, 10), (17, 29 + v)], fill=0, width=3)
    d.line([(17, 29 + v), (38, 29 + v)], fill=0, width=3)
    d.line([(38, 29 + v), (42, 14)], fill=0, width=3)
    d.line([(42, 14), (15, 14)], fill=0, width=3)
    d.ellipse([17, 33, 24, 40], fill=0)
    d.ellipse([31, 33, 38, 40], fill=0)
    d.line([(20, 29 + v), (20, 34)], fill=0, width=2)
    d.line([(34, 29 + v), (34, 34)], fill=0, width=2)


def facebook(d, v):
    d.line([(26, 10), (26, 46)], fill=0, width=4 + (v == 1))
    d.line([(26, 12), (36, 12)], fill=0, width=3)
    d.line([(18, 24 + v), (34, 24 + v)], fill=0, width=3)


def twitter(d, v):
    d.line([(1, 30), (14, 18 + v), (26, 24), (33, 10 + v), (41, 20)], fill=0, width=3)
    d.ellipse([16, 22, 36, 40], outline=0, width=2)
    d.line([(26, 22), (26, 28)], fill=0, width=2)


GLYPHS = {
    "Call": call,
    "Email": email,
    "Avatar": avatar,
    "Group": group,
    "Follow": follow,
    "Location crosshair": location_crosshair,
    "Location": location,
    "Photo": photo,
    "Videocam": videocam,
    "Wallpaper": wallpaper,
    "Microphone": microphone,
    "Cart": cart,
    "Facebook": facebook,
    "Twitter": twitter,
}

EIGHT = np.ones((3, 3), dtype=int)


def check(img: Image.Image, label: str):
    arr = np.asarray(img)
    ink = arr < 128
    n = ndimage.label(ink, structure=EIGHT)[1]
    if n != 1:
        sys.exit(f"{label}: expected one ink component, found {n}")
    ys, xs = np.nonzero(ink)
    if not (ys.min() == 0 and xs.min() == 0 and ys.max() == SIZE - 1 and xs.max() == SIZE - 1):
        sys.exit(f"{label}: ink does not span the canvas")


def feature(img: Image.Image) -> np.ndarray:
    small = img.resize((32, 32), Image.BILINEAR)
    return np.asarray(small, dtype=np.float64) / 255.0


def main():
    feats: dict[str, list[np.ndarray]] = {}
    for name, glyph in GLYPHS.items():
        cls_dir = OUT / name
        cls_dir.mkdir(parents=True, exist_ok=True)
        feats[name] = []
        for v in range(3):
            img, d = _canvas()
            glyph(d, v)
            check(img, f"{name}/{v}")
            img.save(cls_dir / f"{v}.png")
            feats[name].append(feature(img))

    def rms(a, b):
        return float(np.sqrt(np.mean((a - b) ** 2)))

    within = max(rms(a, b) for fs in feats.values() for a in fs for b in fs)
    cross = min(rms(a, b)
                for na, fa in feats.items() for nb, fb in feats.items() if na != nb
                for a in fa for b in fb)
    if cross <= within:
        sys.exit(f"classes not separable: within {within:.4f} >= cross {cross:.4f}")
    print(f"wrote {len(GLYPHS)} classes x3 -> {OUT} (within {within:.4f}, cross {cross:.4f})")


if __name__ == "__main__":
    main()
