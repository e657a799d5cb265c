"""Built-in character-trigram language detector (English gate).

Classifies a text to the nearest of the bundled rank profiles using the
out-of-place measure. Texts with too few letters come back as "und", which
the ingestion filter keeps. A custom detector object (anything with a
``detect(text) -> tag`` method) can replace this one.
"""

from __future__ import annotations

import json
import re
import unicodedata
from collections import Counter
from pathlib import Path

from .lexical import DATA_DIR

DEFAULT_PROFILES = DATA_DIR / "language_profiles.json"

_WORD_RE = re.compile(r"[^\W\d_]+", re.UNICODE)


def _trigram_ranks(text: str, limit: int) -> dict[str, int]:
    counts: Counter = Counter()
    for word in _WORD_RE.findall(unicodedata.normalize("NFC", text.lower())):
        padded = f"_{word}_"
        for i in range(len(padded) - 2):
            counts[padded[i:i + 3]] += 1
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:limit]
    return {gram: rank for rank, (gram, _) in enumerate(ranked)}


class TrigramLanguageDetector:
    def __init__(self, profiles_path: str | Path | None = None, min_letters: int = 30):
        path = Path(profiles_path) if profiles_path else DEFAULT_PROFILES
        raw = json.loads(path.read_text(encoding="utf-8"))
        self.profiles = {lang: {g: i for i, g in enumerate(grams)} for lang, grams in raw.items()}
        self.min_letters = min_letters

    def detect(self, text: str) -> str:
        letters = sum(len(w) for w in _WORD_RE.findall(text))
        if letters < self.min_letters:
            return "und"
        ranks = _trigram_ranks(text, 300)
        if not ranks:
            return "und"
        best_lang, best_score = "und", None
        for lang, profile in sorted(self.profiles.items()):
            out_of_place = len(profile)
            score = sum(abs(r - profile.get(g, out_of_place)) for g, r in ranks.items())
            if best_score is None or score < best_score:
                best_lang, best_score = lang, score
        return best_lang
