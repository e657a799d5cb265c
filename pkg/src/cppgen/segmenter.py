"""Per-data-type policy segment extraction.

Paragraph selection runs one of two classifier routes depending on document
structure, then a two-stage sentence matcher assigns sentences to data types:
stage 1 is the taxonomy keyword scan; sentences with no keyword at all go to
stage 2, a relevance gate plus noun-chunk/keyword similarity with a strict
threshold. Matched keyword or chunk positions are kept as bold spans.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import TaxonomyError
from .ingest import HEADING, PolicyDocument, STRUCTURED
from .lexical import DATA_DIR, LexicalDatabase
from .taxonomy import DataType, Taxonomy, keyword_scan

FALLBACK_TEXT = "No relative information is found in the privacy policy."

TYPES = "types"
FIRST_PARTY = "first_party"
THIRD_PARTY = "third_party"
OTHER = "other"


@dataclass(frozen=True)
class Sentence:
    text: str
    block_index: int
    start: int
    end: int


@dataclass(frozen=True)
class NounChunk:
    text: str
    head: str
    start: int
    end: int


@dataclass(frozen=True)
class SegmentSentence:
    sentence: Sentence
    bold_spans: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class PolicySegment:
    data_type: DataType
    sentences: tuple[SegmentSentence, ...]
    found: bool

    def rendered_text(self) -> str:
        if not self.found:
            return FALLBACK_TEXT
        return " ".join(ss.sentence.text for ss in self.sentences)


@dataclass(frozen=True)
class RelevanceLabel:
    paragraph_index: int
    label: str
    probability: float | None = None


# --- sentence tokenization -------------------------------------------------

_ABBREVIATIONS = {
    "e.g", "i.e", "etc", "inc", "ltd", "co", "corp", "mr", "mrs", "ms",
    "dr", "prof", "st", "no", "vs", "u.s", "e.u", "dept", "approx", "fig",
}

_TERMINATOR_RE = re.compile(r"[.!?]+[)\]\"'”’]*")
_PREV_TOKEN_RE = re.compile(r"[\w.&-]+$")
_NEXT_CHAR_RE = re.compile(r"\s*(\S)")


def tokenize_sentences(text: str, block_index: int = 0) -> list[Sentence]:
    """Terminator-based splitting with abbreviation and continuation guards."""
    sentences: list[Sentence] = []
    start = 0
    for m in _TERMINATOR_RE.finditer(text):
        end = m.end()
        if end < len(text) and not text[end].isspace():
            continue  # decimal points, URLs, mid-token dots
        if "!" not in m.group() and "?" not in m.group():
            prev = _PREV_TOKEN_RE.search(text, 0, m.start())
            if prev and prev.group().rstrip(".").lower() in _ABBREVIATIONS:
                continue
            nxt = _NEXT_CHAR_RE.match(text, end)
            if nxt and nxt.group(1).islower():
                continue  # sentences do not resume in lowercase
        _append_trimmed(sentences, text, start, end, block_index)
        start = end
    _append_trimmed(sentences, text, start, len(text), block_index)
    return sentences


def _append_trimmed(sentences, text, start, end, block_index):
    chunk = text[start:end]
    s = start + (len(chunk) - len(chunk.lstrip()))
    e = end - (len(chunk) - len(chunk.rstrip()))
    if s < e:
        sentences.append(Sentence(text[s:e], block_index, s, e))


# --- built-in classifier ports ---------------------------------------------

_TYPES_HEADING_CUES = (
    "information we collect", "types of", "personal information",
    "personal data", "data we collect",
)


class CueHeadingClassifier:
    """Heading -> label via cue phrases; trained models can replace this."""

    def classify_heading(self, text: str) -> str:
        low = text.lower()
        return TYPES if any(cue in low for cue in _TYPES_HEADING_CUES) else OTHER


_FIRST_PARTY_CUES = (
    "we collect", "we may collect", "we use", "we may use", "we gather",
    "we obtain", "we receive", "we store", "we process", "we access",
    "information we collect", "data we collect", "you provide",
    "collected from you", "we ask",
)
_THIRD_PARTY_CUES = (
    "we share", "we may share", "third party", "third parties",
    "we disclose", "we may disclose", "we sell", "we transfer",
    "shared with", "disclosed to", "our partners", "service providers",
)


class CueParagraphClassifier:
    """Cue-density pseudo-probabilities: p = hits / (hits + 1).

    One distinct cue scores exactly 0.5, which the strict selection
    threshold excludes; two or more cues select the paragraph.
    """

    def classify_paragraph(self, text: str) -> dict[str, float]:
        low = text.lower()
        out = {}
        for label, cues in ((FIRST_PARTY, _FIRST_PARTY_CUES), (THIRD_PARTY, _THIRD_PARTY_CUES)):
            hits = sum(1 for cue in cues if cue in low)
            out[label] = hits / (hits + 1)
        return out


_GATE_BASES = ("collect", "share", "use", "access", "store", "process",
               "disclose", "obtain", "receive", "transfer")


def _inflect(base: str) -> set[str]:
    forms = {base}
    forms.add(base + ("es" if base.endswith(("s", "x", "z", "ch", "sh")) else "s"))
    if base == "transfer":
        forms.update({"transferred", "transferring"})
    elif base.endswith("e"):
        forms.update({base + "d", base[:-1] + "ing"})
    else:
        forms.update({base + "ed", base + "ing"})
    return forms


class VerbCueRelevanceGate:
    """A sentence is data-practice relevant when it contains a cue verb."""

    def __init__(self, bases=_GATE_BASES):
        forms = sorted(set().union(*(_inflect(b) for b in bases)), key=len, reverse=True)
        self._re = re.compile(r"\b(?:" + "|".join(forms) + r")\b", re.IGNORECASE)

    def is_relevant(self, text: str) -> bool:
        return bool(self._re.search(text))


# --- noun chunking ----------------------------------------------------------

_TOKEN_RE = re.compile(r"[^\W\d_]+(?:[-'’][^\W\d_]+)*|\d+|\S", re.UNICODE)
_TAG_PRIORITY = ("det", "poss", "pron", "prep", "conj", "aux", "adv", "verb", "adj")


class RuleNounChunker:
    """Chunks are (determiner|possessive)? adjective* noun+ token runs.

    Tags come from the shipped lexicon; unknown words default to NOUN,
    which suits policy text where novel words are overwhelmingly nominal.
    """

    def __init__(self, lexicon_path: str | Path | None = None):
        path = Path(lexicon_path) if lexicon_path else DATA_DIR / "pos_lexicon.json"
        raw = json.loads(path.read_text(encoding="utf-8"))
        self._tags: dict[str, str] = {}
        for tag in _TAG_PRIORITY:
            for word in raw.get(tag, []):
                self._tags.setdefault(word, tag)

    def tag(self, token: str) -> str:
        if token[0].isdigit():
            return "num"
        if not token[0].isalpha():
            return "punct"
        return self._tags.get(token.lower(), "noun")

    def chunks(self, sentence: str) -> list[NounChunk]:
        tokens = [(m.group(), m.start(), m.end()) for m in _TOKEN_RE.finditer(sentence)]
        tags = [self.tag(t) for t, _, _ in tokens]
        out: list[NounChunk] = []
        i, n = 0, len(tokens)
        while i < n:
            j = i + 1 if tags[i] in ("det", "poss") else i
            while j < n and tags[j] == "adj":
                j += 1
            k = j
            while k < n and tags[k] == "noun":
                k += 1
            if k > j:
                start, end = tokens[i][1], tokens[k - 1][2]
                out.append(NounChunk(sentence[start:end], tokens[k - 1][0], start, end))
                i = k
            else:
                i += 1
        return out


# --- phrase similarity -------------------------------------------------------

_EDGE_PUNCT = ",.;:!?\"'()[]{}"


def _phrase_text(phrase) -> str:
    return phrase.text if isinstance(phrase, NounChunk) else phrase


def _head_word(phrase) -> str:
    word = phrase.head if isinstance(phrase, NounChunk) else phrase.split()[-1]
    return word.strip(_EDGE_PUNCT)


def phrase_similarity(p1, p2, lex: LexicalDatabase) -> float:
    """2 * path_similarity(head1, head2) / (word_count1 + word_count2).

    Path similarity is evaluated on the head (last) token of each phrase;
    the word-count denominator penalizes longer phrases. Unknown heads
    yield 0.
    """
    words1 = _phrase_text(p1).split()
    words2 = _phrase_text(p2).split()
    if not words1 or not words2:
        raise ValueError("phrase_similarity needs non-empty phrases")
    sim = lex.path_similarity(_head_word(p1), _head_word(p2))
    return 2.0 * sim / (len(words1) + len(words2))


# --- paragraph selection ------------------------------------------------------

def classify_blocks(doc: PolicyDocument, heading_cls=None, paragraph_cls=None,
                    prob_threshold: float = 0.5) -> list[RelevanceLabel]:
    """Label every non-heading block via the route the structure dictates."""
    heading_cls = heading_cls or CueHeadingClassifier()
    paragraph_cls = paragraph_cls or CueParagraphClassifier()
    labels: list[RelevanceLabel] = []
    if doc.structure == STRUCTURED:
        current = OTHER
        for block in doc.blocks:
            if block.kind == HEADING:
                current = heading_cls.classify_heading(block.text)
            else:
                labels.append(RelevanceLabel(block.index, current))
    else:
        for block in doc.blocks:
            if block.kind == HEADING:
                continue
            probs = paragraph_cls.classify_paragraph(block.text)
            label, prob = max(
                ((lbl, probs.get(lbl, 0.0)) for lbl in (FIRST_PARTY, THIRD_PARTY)),
                key=lambda item: (item[1], item[0] == FIRST_PARTY),
            )
            if prob <= prob_threshold:
                label = OTHER
            labels.append(RelevanceLabel(block.index, label, prob))
    return labels


def select_relevant_paragraphs(doc: PolicyDocument, heading_cls=None, paragraph_cls=None,
                               prob_threshold: float = 0.5) -> list[int]:
    """Indices of blocks whose sentences enter the two-stage matcher."""
    labels = classify_blocks(doc, heading_cls, paragraph_cls, prob_threshold)
    return [lab.paragraph_index for lab in labels
            if lab.label in (TYPES, FIRST_PARTY, THIRD_PARTY)]


# --- two-stage extraction ------------------------------------------------------

def merge_spans(spans) -> tuple[tuple[int, int], ...]:
    """Sort and merge overlapping spans; adjacent spans stay separate."""
    merged: list[list[int]] = []
    for s, e in sorted(spans):
        if merged and s < merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], e)
        else:
            merged.append([s, e])
    return tuple((s, e) for s, e in merged)


def extract_segments(doc: PolicyDocument, taxonomy: Taxonomy, *, gate=None,
                     chunker=None, lex: LexicalDatabase | None = None,
                     phrase_threshold: float = 0.8, prob_threshold: float = 0.5,
                     heading_cls=None, paragraph_cls=None,
                     selected: list[int] | None = None) -> dict[DataType, PolicySegment]:
    if selected is None:
        selected = select_relevant_paragraphs(doc, heading_cls, paragraph_cls, prob_threshold)
    gate = gate or VerbCueRelevanceGate()
    chunker = chunker or RuleNounChunker()
    lex = lex or LexicalDatabase()
    blocks = {b.index: b for b in doc.blocks}
    per_type: dict[DataType, list[SegmentSentence]] = {dt: [] for dt in DataType}

    for index in selected:
        block = blocks[index]
        for sentence in tokenize_sentences(block.text, index):
            hits = keyword_scan(sentence.text, taxonomy)
            spans_by_type: dict[DataType, list[tuple[int, int]]] = {}
            if hits:
                for hit in hits:
                    spans_by_type.setdefault(hit.data_type, []).append(hit.span)
            elif gate.is_relevant(sentence.text):
                for chunk in chunker.chunks(sentence.text):
                    for entry in taxonomy:
                        for kw in entry.keywords:
                            if phrase_similarity(chunk, kw, lex) > phrase_threshold:
                                spans_by_type.setdefault(entry.data_type, []).append(
                                    (chunk.start, chunk.end))
                                break
            for dt in sorted(spans_by_type, key=lambda d: d.ordinal):
                per_type[dt].append(SegmentSentence(sentence, merge_spans(spans_by_type[dt])))

    return {dt: PolicySegment(dt, tuple(lst), bool(lst)) for dt, lst in per_type.items()}


# --- record serialization --------------------------------------------------------

def segments_to_records(app_id: str, segments: dict[DataType, PolicySegment]) -> str:
    """One JSON record per data type, in canonical order."""
    lines = []
    for dt in DataType:
        seg = segments[dt]
        lines.append(json.dumps({
            "app_id": app_id,
            "data_type": dt.value,
            "found": seg.found,
            "sentences": [{"text": ss.sentence.text,
                           "bold_spans": [list(span) for span in ss.bold_spans]}
                          for ss in seg.sentences],
        }, sort_keys=True))
    return "\n".join(lines) + "\n"


def segments_from_records(text: str) -> tuple[str, dict[DataType, PolicySegment]]:
    """Inverse of segments_to_records (sentence offsets are not preserved)."""
    app_id = ""
    segments: dict[DataType, PolicySegment] = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        app_id = rec.get("app_id", app_id)
        dt = DataType.from_label(rec["data_type"])
        sentences = tuple(
            SegmentSentence(Sentence(s["text"], -1, 0, len(s["text"])),
                            tuple(tuple(span) for span in s.get("bold_spans", [])))
            for s in rec.get("sentences", [])
        )
        segments[dt] = PolicySegment(dt, sentences, bool(rec["found"]))
    missing = [dt.value for dt in DataType if dt not in segments]
    if missing:
        raise TaxonomyError(f"segment records missing data types: {', '.join(missing)}")
    return app_id, segments
