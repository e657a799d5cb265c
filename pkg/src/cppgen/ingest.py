"""Normalize privacy-policy HTML into an ordered block sequence.

Headings (h1-h6), paragraphs (p), list items (li) and text-bearing leaf
div/section elements become blocks; script/style/nav content is dropped.
A document is "structured" when its block kinds match (Heading Paragraph+)+
with list items counting as paragraphs, otherwise "flat".
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from html.parser import HTMLParser

from .errors import MalformedDocument

HEADING = "heading"
PARAGRAPH = "paragraph"
LIST_ITEM = "list_item"

STRUCTURED = "structured"
FLAT = "flat"

_SKIP_TAGS = {"script", "style", "nav", "head", "noscript", "template", "svg"}
_HEADING_TAGS = {f"h{i}": i for i in range(1, 7)}
_LEAF_CONTAINER_TAGS = {"div", "section"}
_CONTAINER_TAGS = _LEAF_CONTAINER_TAGS | {"ul", "ol"}
_VOID_TAGS = {"br", "hr", "img", "input", "meta", "link", "area", "base",
              "col", "embed", "source", "track", "wbr"}


@dataclass(frozen=True)
class RawPolicy:
    html: bytes
    source_uri: str | None = None
    fetched_at: str | None = None


@dataclass(frozen=True)
class Block:
    index: int
    kind: str
    text: str
    heading_level: int | None = None
    language: str = "und"


@dataclass(frozen=True)
class PolicyDocument:
    blocks: tuple[Block, ...]
    structure: str
    word_count: int

    @classmethod
    def from_blocks(cls, blocks) -> "PolicyDocument":
        blocks = tuple(replace(b, index=i) for i, b in enumerate(blocks))
        return cls(blocks, detect_structure_of(blocks),
                   sum(len(b.text.split()) for b in blocks))


@dataclass
class _Frame:
    tag: str
    kind: str | None          # None for plain container frames (div/section)
    level: int | None
    seq: int
    parts: list[str] = field(default_factory=list)
    has_block_child: bool = False


class _Extractor(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.blocks: list[tuple[int, str, int | None, str]] = []
        self.stack: list[_Frame] = []
        self.skip_depth = 0
        self.seq = 0

    def _open(self, tag, kind, level=None):
        for frame in self.stack:
            frame.has_block_child = True
        self.stack.append(_Frame(tag, kind, level, self.seq))
        self.seq += 1

    def _emit(self, frame: _Frame):
        if frame.kind is None and (frame.has_block_child or frame.tag not in _LEAF_CONTAINER_TAGS):
            return  # only leaf div/section containers yield blocks
        text = " ".join("".join(frame.parts).split())
        if not text:
            return
        kind = frame.kind or PARAGRAPH
        self.blocks.append((frame.seq, kind, frame.level, text))

    def _close_through(self, tag):
        for i in range(len(self.stack) - 1, -1, -1):
            if self.stack[i].tag == tag:
                while len(self.stack) > i:
                    self._emit(self.stack.pop())
                return

    def handle_starttag(self, tag, attrs):
        if tag in _SKIP_TAGS:
            self.skip_depth += 1
            return
        if self.skip_depth:
            return
        if tag in _HEADING_TAGS or tag == "p" or tag == "li":
            # implicit closes: a new <p>/<h*> ends an open <p>; a new <li>
            # ends an open sibling <li> (nested lists sit behind a ul/ol frame)
            if self.stack:
                top = self.stack[-1].tag
                if (top == "p" and tag != "li") or (top == "li" and tag == "li"):
                    self._emit(self.stack.pop())
            if tag in _HEADING_TAGS:
                self._open(tag, HEADING, _HEADING_TAGS[tag])
            else:
                self._open(tag, LIST_ITEM if tag == "li" else PARAGRAPH)
        elif tag in _CONTAINER_TAGS:
            self._open(tag, None)
        elif tag in _VOID_TAGS and self.stack:
            self.stack[-1].parts.append(" ")

    def handle_startendtag(self, tag, attrs):
        self.handle_starttag(tag, attrs)
        if tag not in _VOID_TAGS and tag not in _SKIP_TAGS:
            self.handle_endtag(tag)

    def handle_endtag(self, tag):
        if tag in _SKIP_TAGS:
            self.skip_depth = max(0, self.skip_depth - 1)
            return
        if self.skip_depth:
            return
        if tag in _HEADING_TAGS or tag in ("p", "li") or tag in _CONTAINER_TAGS:
            self._close_through(tag)

    def handle_data(self, data):
        if self.skip_depth or not self.stack:
            return
        self.stack[-1].parts.append(data)

    def finish(self):
        while self.stack:
            self._emit(self.stack.pop())
        self.blocks.sort(key=lambda item: item[0])


def parse_html(raw: RawPolicy) -> PolicyDocument:
    """Parse policy HTML into an ordered, whitespace-collapsed block sequence."""
    text = raw.html.decode("utf-8", errors="replace")
    extractor = _Extractor()
    extractor.feed(text)
    extractor.close()
    extractor.finish()
    blocks = [Block(i, kind, btext, level)
              for i, (_, kind, level, btext) in enumerate(extractor.blocks)]
    if not blocks:
        raise MalformedDocument("no text-bearing block found in document")
    return PolicyDocument.from_blocks(blocks)


def detect_structure_of(blocks) -> str:
    """Grammar walk for (Heading Paragraph+)+, list items counting as paragraphs."""
    state = 0  # 0: expect heading, 1: expect paragraph, 2: paragraph or heading
    for block in blocks:
        if block.kind == HEADING:
            if state == 1:
                return FLAT
            state = 1
        else:
            if state == 0:
                return FLAT
            state = 2
    return STRUCTURED if state == 2 else FLAT


def detect_structure(doc: PolicyDocument) -> str:
    return detect_structure_of(doc.blocks)


def filter_non_english(doc: PolicyDocument, detector) -> PolicyDocument:
    """Drop blocks whose detected language is neither English nor undetermined."""
    kept = []
    for block in doc.blocks:
        tag = detector.detect(block.text)
        if tag in ("en", "und"):
            kept.append(replace(block, language=tag))
    return PolicyDocument.from_blocks(kept)


def blocks_to_records(doc: PolicyDocument) -> str:
    """Line-delimited serialization of the block sequence, for inspection."""
    lines = [json.dumps({"index": b.index, "kind": b.kind, "heading_level": b.heading_level,
                         "text": b.text, "language": b.language}, sort_keys=True)
             for b in doc.blocks]
    return "\n".join(lines) + "\n" if lines else ""
