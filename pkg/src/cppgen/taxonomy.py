"""The twelve privacy data types, their keyword lists and icon-class mappings.

The default taxonomy is compiled in. A deployment can extend keyword lists by
loading a JSON taxonomy file with :func:`load_taxonomy`; the file must still
define exactly the twelve known data types.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .errors import TaxonomyError


class DataType(enum.Enum):
    """Closed set of privacy data types. The first six are basic PII."""

    NAME = "Name"
    BIRTHDAY = "Birthday"
    ADDRESS = "Address"
    PHONE = "Phone"
    EMAIL = "Email"
    PROFILE = "Profile"
    CONTACTS = "Contacts"
    LOCATION = "Location"
    PHOTOS = "Photos"
    VOICES = "Voices"
    FINANCIAL_INFO = "FinancialInfo"
    SOCIAL_MEDIA = "SocialMedia"

    @property
    def ordinal(self) -> int:
        return _ORDINALS[self]

    @property
    def basic_pii(self) -> bool:
        return self.ordinal < 6

    @classmethod
    def from_label(cls, label: str) -> "DataType":
        """Parse a data-type name, tolerating spacing/case variants."""
        key = re.sub(r"[\s_-]+", "", label).lower()
        try:
            return _LABEL_INDEX[key]
        except KeyError:
            raise TaxonomyError(f"unknown data type: {label!r}") from None


_ORDINALS = {dt: i for i, dt in enumerate(DataType)}
_LABEL_INDEX = {dt.value.lower(): dt for dt in DataType}


@dataclass(frozen=True)
class IconClass:
    """A mobile-icon class (numeric id plus display name)."""

    id: int
    name: str


@dataclass(frozen=True)
class TaxonomyEntry:
    data_type: DataType
    description: str
    keywords: tuple[str, ...]
    icon_classes: tuple[IconClass, ...] = ()

    @property
    def basic_pii(self) -> bool:
        return self.data_type.basic_pii

    def __post_init__(self):
        if not self.keywords:
            raise TaxonomyError(f"{self.data_type.value}: keyword list is empty")
        if len(set(self.keywords)) != len(self.keywords):
            raise TaxonomyError(f"{self.data_type.value}: duplicate keywords")
        for kw in self.keywords:
            if kw != kw.lower():
                raise TaxonomyError(f"{self.data_type.value}: keyword not lowercase: {kw!r}")


class Taxonomy:
    """Immutable set of the twelve taxonomy entries, in canonical order."""

    def __init__(self, entries: Iterable[TaxonomyEntry]):
        by_type = {}
        for entry in entries:
            if entry.data_type in by_type:
                raise TaxonomyError(f"duplicate entry for {entry.data_type.value}")
            by_type[entry.data_type] = entry
        missing = [dt.value for dt in DataType if dt not in by_type]
        if missing:
            raise TaxonomyError(f"missing entries for: {', '.join(missing)}")
        self._entries = tuple(by_type[dt] for dt in DataType)
        self._icon_by_id: dict[int, tuple[IconClass, DataType]] = {}
        self._icon_by_name: dict[str, tuple[IconClass, DataType]] = {}
        for entry in self._entries:
            for ic in entry.icon_classes:
                if ic.id in self._icon_by_id:
                    raise TaxonomyError(f"icon class id {ic.id} mapped to two data types")
                self._icon_by_id[ic.id] = (ic, entry.data_type)
                self._icon_by_name[ic.name.lower()] = (ic, entry.data_type)

    @property
    def entries(self) -> tuple[TaxonomyEntry, ...]:
        return self._entries

    def entry(self, data_type: DataType) -> TaxonomyEntry:
        return self._entries[data_type.ordinal]

    def icon_class_by_name(self, name: str) -> tuple[IconClass, DataType] | None:
        return self._icon_by_name.get(name.lower())

    def icon_class_by_id(self, class_id: int) -> tuple[IconClass, DataType] | None:
        return self._icon_by_id.get(class_id)

    def __iter__(self):
        return iter(self._entries)


WORD_SUBSTRING = "word_substring"
STRING_NGRAM = "string_ngram"


@dataclass(frozen=True)
class KeywordHit:
    data_type: DataType
    keyword: str
    start: int
    end: int
    mode: str

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


def fold_case(text: str) -> str:
    """Position-preserving lowercase.

    Characters whose lowercase form changes length (a handful of Unicode
    oddities) are kept as-is so hit spans always index the original text.
    """
    out = []
    for ch in text:
        low = ch.lower()
        out.append(low if len(low) == 1 else ch)
    return "".join(out)


_WORD_RE = re.compile(r"\S+")


def keyword_scan(text: str, taxonomy: Taxonomy) -> list[KeywordHit]:
    """Scan text against every taxonomy keyword.

    Single-word keywords match as a case-insensitive substring of any
    whitespace-delimited word (one hit per word, at the first occurrence
    inside it). Multi-word keywords match as a case-insensitive substring
    of the whole text, at every occurrence. Hits come back in ascending
    span order; overlaps across data types are all kept.
    """
    if not text:
        return []
    lowered = fold_case(text)
    words = [(m.start(), m.group()) for m in _WORD_RE.finditer(lowered)]
    hits: list[KeywordHit] = []
    for entry in taxonomy:
        for kw in entry.keywords:
            if " " in kw:
                start = lowered.find(kw)
                while start != -1:
                    hits.append(KeywordHit(entry.data_type, kw, start, start + len(kw), STRING_NGRAM))
                    start = lowered.find(kw, start + 1)
            else:
                for wstart, word in words:
                    idx = word.find(kw)
                    if idx != -1:
                        start = wstart + idx
                        hits.append(KeywordHit(entry.data_type, kw, start, start + len(kw), WORD_SUBSTRING))
    hits.sort(key=lambda h: (h.start, h.end, h.data_type.ordinal, h.keyword))
    return hits


# Table rows: (data type, description, keywords, icon classes).
_DEFAULT_ROWS = [
    (
        DataType.NAME,
        "How a user refers to themselves",
        ("name", "first name", "last name", "full name", "real name",
         "surname", "family name", "given name"),
        (),
    ),
    (
        DataType.BIRTHDAY,
        "A user's birthday",
        ("birthday", "date of birth", "birth date", "dob", "birth year"),
        (),
    ),
    (
        DataType.ADDRESS,
        "A user's address",
        ("mailing address", "physical address", "postal address", "billing address",
         "shipping address", "residential address", "residence", "personal address"),
        (),
    ),
    (
        DataType.PHONE,
        "A user's phone number",
        ("phone", "phone number", "mobile", "mobile phone", "mobile number",
         "telephone", "telephone number", "call"),
        ((43, "Call"),),
    ),
    (
        DataType.EMAIL,
        "A user's email address",
        ("email", "e-mail", "email address", "e-mail address"),
        ((6, "Email"),),
    ),
    (
        DataType.PROFILE,
        "A user's account information",
        ("profile", "account"),
        ((49, "Avatar"),),
    ),
    (
        DataType.CONTACTS,
        "A user's contact information, or the access to the contact permission",
        ("contacts", "phone-book", "phone book", "device's address book"),
        ((68, "Group"), (3, "Follow")),
    ),
    (
        DataType.LOCATION,
        "A user's location information, or the access to the location permission",
        ("location", "locate", "geography", "geo", "geo-location", "precision location"),
        ((40, "Location crosshair"), (72, "Location")),
    ),
    (
        DataType.PHOTOS,
        "A user's photos, videos, or the access to the camera permission",
        ("camera", "photo", "scan", "album", "picture", "gallery", "photo library",
         "storage", "image", "video", "scanner", "photograph"),
        ((42, "Photo"), (56, "Videocam"), (82, "Wallpaper")),
    ),
    (
        DataType.VOICES,
        "A user's voices, recordings, or the access to the microphone permission",
        ("microphone", "voice", "mic", "speech", "talk"),
        ((91, "Microphone"),),
    ),
    (
        DataType.FINANCIAL_INFO,
        "Information about a user's financial accounts, purchases, or transactions",
        ("credit card", "company", "companies", "organization", "organizations",
         "pay", "payment"),
        ((61, "Cart"),),
    ),
    (
        DataType.SOCIAL_MEDIA,
        "A user's social media information, or the access to social media accounts",
        ("social media", "facebook", "twitter", "socialmedia", "share"),
        ((77, "Facebook"), (89, "Twitter")),
    ),
]


def load_default_taxonomy() -> Taxonomy:
    return Taxonomy(
        TaxonomyEntry(dt, desc, kws, tuple(IconClass(i, n) for i, n in icons))
        for dt, desc, kws, icons in _DEFAULT_ROWS
    )


def load_taxonomy(path: str | Path) -> Taxonomy:
    """Load a taxonomy from a JSON file (a list of per-data-type records)."""
    try:
        records = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise TaxonomyError(f"cannot read taxonomy file {path}: {exc}") from exc
    if not isinstance(records, list):
        raise TaxonomyError(f"taxonomy file {path} must hold a list of records")
    entries = []
    for rec in records:
        try:
            dt = DataType.from_label(rec["data_type"])
            icons = tuple(IconClass(int(ic["id"]), str(ic["name"]))
                          for ic in rec.get("icon_classes", []))
            entries.append(TaxonomyEntry(
                dt,
                str(rec.get("description", "")),
                tuple(str(k) for k in rec["keywords"]),
                icons,
            ))
        except (KeyError, TypeError, ValueError) as exc:
            raise TaxonomyError(f"bad taxonomy record in {path}: {exc}") from exc
    return Taxonomy(entries)


def dump_taxonomy(taxonomy: Taxonomy) -> str:
    """Serialize a taxonomy to the JSON document format of load_taxonomy."""
    records = [
        {
            "data_type": e.data_type.value,
            "description": e.description,
            "keywords": list(e.keywords),
            "icon_classes": [{"id": ic.id, "name": ic.name} for ic in e.icon_classes],
            "basic_pii": e.basic_pii,
        }
        for e in taxonomy
    ]
    return json.dumps(records, indent=2)
