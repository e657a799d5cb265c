#!/usr/bin/env python3
"""Generate the hand-labeled micro evaluation dataset under tests/data/micro_dataset.

Every prediction the pipeline will make on this dataset is derivable by hand
(exemplar icons are pasted pixel-exact, OCR comes from fixtures, policies
drive the built-in heuristics deterministically); the expected metric values
are frozen in tests/test_acceptance.py. This script checks its own curation
assumptions (language detection, block structure) before writing.
"""

import json
import shutil
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import numpy as np
from PIL import Image

from cppgen.detect import EXEMPLAR_DIR
from cppgen.ingest import RawPolicy, filter_non_english, parse_html
from cppgen.language import TrigramLanguageDetector
from cppgen.segmenter import FALLBACK_TEXT

ROOT = Path(__file__).resolve().parent.parent / "tests" / "data" / "micro_dataset"
CANVAS = 160

DETECTOR = TrigramLanguageDetector()


def canvas():
    return np.full((CANVAS, CANVAS), 255, dtype=np.uint8)


def paste(arr, class_name, x, y):
    img = np.asarray(Image.open(EXEMPLAR_DIR / class_name / "0.png").convert("L"))
    h, w = img.shape
    arr[y:y + h, x:x + w] = img
    return {"x": x, "y": y, "w": w, "h": h}


def rect(arr, x, y, w, h):
    arr[y:y + h, x:x + w] = 0


def box(x, y, w, h):
    return {"x": x, "y": y, "w": w, "h": h}


def context(bbox, data_type, kind):
    return {"bbox": bbox, "data_type": data_type, "kind": kind}


def ocr_box(bbox, text):
    return {**bbox, "text": text, "confidence": 1.0}


def check_policy(html: str, expected_structure: str):
    doc = filter_non_english(parse_html(RawPolicy(html.encode())), DETECTOR)
    assert doc.structure == expected_structure, (doc.structure, expected_structure)
    for block in doc.blocks:
        assert block.language in ("en", "und"), (block.text, block.language)


def segments_file(found_texts: dict[str, str]) -> dict:
    all_types = ["Name", "Birthday", "Address", "Phone", "Email", "Profile",
                 "Contacts", "Location", "Photos", "Voices", "FinancialInfo",
                 "SocialMedia"]
    return {dt: ({"found": True, "text": found_texts[dt]} if dt in found_texts
                 else {"found": False, "text": FALLBACK_TEXT})
            for dt in all_types}


def write_app(app_id, policy_html, gt_segments, shots):
    app = ROOT / "apps" / app_id
    (app / "screenshots").mkdir(parents=True)
    (app / "annotations").mkdir()
    (app / "ocr").mkdir()
    (app / "policy.html").write_text(policy_html, encoding="utf-8")
    (app / "segments.json").write_text(json.dumps(gt_segments, indent=1), encoding="utf-8")
    for shot_id, (image, ocr_boxes, contexts) in shots.items():
        Image.fromarray(image).save(app / "screenshots" / f"{shot_id}.png")
        (app / "ocr" / f"{shot_id}.json").write_text(
            json.dumps({"boxes": ocr_boxes}, indent=1), encoding="utf-8")
        (app / "annotations" / f"{shot_id}.json").write_text(
            json.dumps({"contexts": contexts}, indent=1), encoding="utf-8")


def app_alpha():
    p_loc = "We may collect your precise geo-location when the app is open."
    p_mail = "Our systems keep your e-mail address and your telephone number for support."
    p_pics = "Pics are stored on this device."
    p_voice = "You can reach our voice support line anytime."
    policy = f"""<html><body>
<h1>Privacy Policy</h1>
<p>This notice explains how the app handles your data.</p>
<h2>Types of Information We Collect</h2>
<p>{p_loc}</p>
<p>{p_mail}</p>
<p>{p_pics}</p>
<h2>Contact Us</h2>
<p>{p_voice}</p>
</body></html>"""
    check_policy(policy, "structured")

    gt_segments = segments_file({
        "Location": p_loc,
        "Email": p_mail,
        "Phone": p_mail,
        "Photos": p_pics,
        "Voices": p_voice,
    })

    shots = {}
    # shot 1: location text + location icon, both exact; oversized decoy
    img = canvas()
    icon = paste(img, "Location", 100, 60)
    rect(img, 10, 90, 60, 60)  # 14.1% of area: dropped by the max-area rule
    a = box(10, 10, 100, 16)
    shots["1"] = (img, [ocr_box(a, "Share your location")],
                  [context(a, "Location", "textual"), context(icon, "Location", "iconic")])

    # shot 2: birthday text with IoU 0.6 against gt; unwanted microphone icon
    img = canvas()
    paste(img, "Microphone", 30, 80)
    b = box(10, 10, 100, 16)
    shots["2"] = (img, [ocr_box(b, "use your birthday")],
                  [context(box(10, 14, 100, 16), "Birthday", "textual")])

    # shot 3: displaced email text (miss) + exact phone text; tiny decoy
    img = canvas()
    rect(img, 120, 120, 8, 8)  # 0.25%: dropped by the min-area rule
    c = box(10, 10, 80, 16)
    d = box(10, 40, 90, 16)
    shots["3"] = (img, [ocr_box(c, "Enter your email"), ocr_box(d, "Please call our hotline")],
                  [context(box(10, 60, 80, 16), "Email", "textual"),
                   context(d, "Phone", "textual")])

    # shot 4: nothing privacy-related; non-squarish decoy
    img = canvas()
    rect(img, 40, 60, 35, 60)  # aspect 0.583: dropped by the aspect rule
    e = box(20, 20, 120, 16)
    shots["4"] = (img, [ocr_box(e, "Welcome to the dashboard")], [])

    return policy, gt_segments, shots


def app_beta():
    p1 = "We collect your first name and surname, and you provide a profile photo."
    p2 = "We may share your current position with our partners."
    p3 = "Account holders may disclose payment details to us."
    p4 = "Third parties may receive technical logs, and we store backup copies."
    policy = f"""<html><body>
<p>Thank you for reading this notice carefully.</p>
<p>{p1}</p>
<p>{p2}</p>
<p>{p3}</p>
<p>{p4}</p>
</body></html>"""
    check_policy(policy, "flat")

    gt_segments = segments_file({
        "Name": p1,
        "Profile": p1,
        "Photos": p1,
        "FinancialInfo": p3,
    })

    shots = {}
    # shot 1: two exact icons
    img = canvas()
    avatar = paste(img, "Avatar", 20, 20)
    cart = paste(img, "Cart", 90, 90)
    shots["1"] = (img, [], [context(avatar, "Profile", "iconic"),
                            context(cart, "FinancialInfo", "iconic")])

    # shot 2: two exact texts; twitter icon annotated elsewhere (miss pair)
    img = canvas()
    twitter = paste(img, "Twitter", 56, 80)
    f = box(10, 10, 110, 16)
    g = box(10, 40, 110, 16)
    shots["2"] = (img, [ocr_box(f, "Add your phone number"),
                        ocr_box(g, "Connect with Facebook")],
                  [context(f, "Phone", "textual"),
                   context(g, "SocialMedia", "textual"),
                   context(box(56, 130, 48, 24), "SocialMedia", "iconic")])

    # shot 3: neutral text only
    img = canvas()
    h = box(10, 10, 120, 16)
    shots["3"] = (img, [ocr_box(h, "Settings and preferences")], [])

    return policy, gt_segments, shots


def app_gamma():
    p1 = "Snap a picture or record a video to attach to your report."
    p2 = "We may collect your whereabouts."
    p3 = "Our staff can view your last name in the admin console."
    p4 = "Backups are encrypted at rest."
    policy = f"""<html><body>
<h2>Types of data we collect</h2>
<p>{p1}</p>
<p>{p2}</p>
<p>{p3}</p>
<h2>How we protect information</h2>
<p>{p4}</p>
</body></html>"""
    check_policy(policy, "structured")

    gt_segments = segments_file({
        "Photos": p1,
        "Name": "Names of account holders appear publicly on the leaderboard.",
    })

    shots = {}
    # shot 1: exact photo icon + photo text
    img = canvas()
    photo = paste(img, "Photo", 56, 56)
    a = box(8, 8, 120, 16)
    shots["1"] = (img, [ocr_box(a, "Upload a picture from your gallery")],
                  [context(a, "Photos", "textual"), context(photo, "Photos", "iconic")])

    # shot 2: exact crosshair icon; email icon annotated as Phone (type miss)
    img = canvas()
    crosshair = paste(img, "Location crosshair", 10, 100)
    email_icon = paste(img, "Email", 100, 10)
    shots["2"] = (img, [], [context(crosshair, "Location", "iconic"),
                            context(email_icon, "Phone", "iconic")])

    # shot 3: voices text at IoU 0.43 (miss pair) + exact videocam icon
    img = canvas()
    cam = paste(img, "Videocam", 20, 100)
    b = box(20, 30, 100, 16)
    shots["3"] = (img, [ocr_box(b, "Turn on the microphone")],
                  [context(box(60, 30, 100, 16), "Voices", "textual"),
                   context(cam, "Photos", "iconic")])

    return policy, gt_segments, shots


def main():
    if ROOT.exists():
        shutil.rmtree(ROOT)
    for app_id, builder in (("app_alpha", app_alpha), ("app_beta", app_beta),
                            ("app_gamma", app_gamma)):
        policy, gt_segments, shots = builder()
        write_app(app_id, policy, gt_segments, shots)
    total = sum(1 for _ in ROOT.glob("apps/*/screenshots/*.png"))
    print(f"wrote micro dataset: 3 apps, {total} screenshots -> {ROOT}")


if __name__ == "__main__":
    main()
