import pytest
from hypothesis import given, strategies as st

from cppgen.errors import TaxonomyError
from cppgen.taxonomy import (DataType, IconClass, Taxonomy, TaxonomyEntry,
                             dump_taxonomy, keyword_scan, load_default_taxonomy,
                             load_taxonomy)

from helpers import as_tuples, oracle_scan

TAX = load_default_taxonomy()


class TestTable:
    def test_twelve_entries(self):
        assert len(TAX.entries) == 12
        assert [e.data_type for e in TAX] == list(DataType)

    def test_basic_pii_split(self):
        flags = [e.basic_pii for e in TAX]
        assert flags == [True] * 6 + [False] * 6

    def test_every_entry_has_keywords(self):
        for entry in TAX:
            assert len(entry.keywords) >= 2
            assert all(kw == kw.lower() for kw in entry.keywords)
            assert len(set(entry.keywords)) == len(entry.keywords)

    def test_location_keywords(self):
        kws = TAX.entry(DataType.LOCATION).keywords
        assert "geo-location" in kws
        assert "precision location" in kws

    def test_name_birthday_address_have_no_icons(self):
        for dt in (DataType.NAME, DataType.BIRTHDAY, DataType.ADDRESS):
            assert TAX.entry(dt).icon_classes == ()

    def test_phone_typo_fixed(self):
        kws = TAX.entry(DataType.PHONE).keywords
        assert "phone" in kws and "hone" not in kws

    def test_bare_address_excluded(self):
        assert "address" not in TAX.entry(DataType.ADDRESS).keywords

    def test_icon_class_mapping(self):
        expected = {
            (43, "Call"): DataType.PHONE,
            (6, "Email"): DataType.EMAIL,
            (49, "Avatar"): DataType.PROFILE,
            (68, "Group"): DataType.CONTACTS,
            (3, "Follow"): DataType.CONTACTS,
            (40, "Location crosshair"): DataType.LOCATION,
            (72, "Location"): DataType.LOCATION,
            (42, "Photo"): DataType.PHOTOS,
            (56, "Videocam"): DataType.PHOTOS,
            (82, "Wallpaper"): DataType.PHOTOS,
            (91, "Microphone"): DataType.VOICES,
            (61, "Cart"): DataType.FINANCIAL_INFO,
            (77, "Facebook"): DataType.SOCIAL_MEDIA,
            (89, "Twitter"): DataType.SOCIAL_MEDIA,
        }
        seen = {}
        for entry in TAX:
            for ic in entry.icon_classes:
                seen[(ic.id, ic.name)] = entry.data_type
        assert seen == expected

    def test_icon_ids_unique(self):
        ids = [ic.id for e in TAX for ic in e.icon_classes]
        assert len(ids) == len(set(ids))

    def test_duplicate_icon_id_rejected(self):
        rows = [TaxonomyEntry(dt, e.description, e.keywords, e.icon_classes)
                for dt, e in zip(DataType, TAX)]
        rows[0] = TaxonomyEntry(DataType.NAME, "x", ("name",), (IconClass(43, "Call"),))
        with pytest.raises(TaxonomyError):
            Taxonomy(rows)

    def test_uppercase_keyword_rejected(self):
        with pytest.raises(TaxonomyError):
            TaxonomyEntry(DataType.NAME, "x", ("Name",))

    def test_empty_keywords_rejected(self):
        with pytest.raises(TaxonomyError):
            TaxonomyEntry(DataType.NAME, "x", ())


class TestFileFormat:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "taxonomy.json"
        path.write_text(dump_taxonomy(TAX), encoding="utf-8")
        loaded = load_taxonomy(path)
        assert [e.keywords for e in loaded] == [e.keywords for e in TAX]
        assert [e.icon_classes for e in loaded] == [e.icon_classes for e in TAX]

    def test_missing_data_type_rejected(self, tmp_path):
        path = tmp_path / "taxonomy.json"
        path.write_text('[{"data_type": "Name", "keywords": ["name"]}]', encoding="utf-8")
        with pytest.raises(TaxonomyError):
            load_taxonomy(path)

    def test_unknown_data_type_rejected(self, tmp_path):
        path = tmp_path / "taxonomy.json"
        path.write_text('[{"data_type": "Biometrics", "keywords": ["iris"]}]', encoding="utf-8")
        with pytest.raises(TaxonomyError):
            load_taxonomy(path)


class TestKeywordScan:
    def test_empty_text(self):
        assert keyword_scan("", TAX) == []

    def test_joined_word_location(self):
        hits = keyword_scan("... your locationWe may share...", TAX)
        loc = [h for h in hits if h.data_type is DataType.LOCATION]
        assert len(loc) == 1
        assert (loc[0].keyword, loc[0].span, loc[0].mode) == ("location", (9, 17), "word_substring")

    def test_email_address_fixture(self):
        # frozen from the pre-build oracle run over every keyword
        text = "Enter your E-Mail Address and billing address"
        hits = keyword_scan(text, TAX)
        assert [(h.data_type, h.keyword, h.start, h.end, h.mode) for h in hits] == [
            (DataType.EMAIL, "e-mail", 11, 17, "word_substring"),
            (DataType.EMAIL, "e-mail address", 11, 25, "string_ngram"),
            (DataType.ADDRESS, "billing address", 30, 45, "string_ngram"),
        ]
        assert as_tuples(hits) == oracle_scan(text, TAX)

    def test_overlapping_hits_kept_across_types(self):
        hits = keyword_scan("my social media share", TAX)
        kws = {h.keyword for h in hits}
        assert {"social media", "share"} <= kws

    def test_ascending_span_order(self):
        hits = keyword_scan("telephone camera location birthday", TAX)
        spans = [(h.start, h.end) for h in hits]
        assert spans == sorted(spans)

    @given(st.text(alphabet=st.sampled_from("abcdefgeo -ilocatnphm\nE"), max_size=60))
    def test_matches_oracle(self, text):
        assert as_tuples(keyword_scan(text, TAX)) == oracle_scan(text, TAX)

    @given(st.text(alphabet=st.characters(codec="ascii"), max_size=80))
    def test_case_insensitive(self, text):
        lower = sorted((h.data_type.value, h.keyword) for h in keyword_scan(text.lower(), TAX))
        mixed = sorted((h.data_type.value, h.keyword) for h in keyword_scan(text, TAX))
        assert lower == mixed

    @given(st.text(max_size=80))
    def test_span_slice_contains_keyword(self, text):
        for h in keyword_scan(text, TAX):
            assert 0 <= h.start < h.end <= len(text)
            assert h.keyword in text[h.start:h.end].lower() or \
                text[h.start:h.end].lower() == h.keyword

    @given(st.text(max_size=80))
    def test_deterministic_and_closed(self, text):
        first = keyword_scan(text, TAX)
        second = keyword_scan(text, TAX)
        assert first == second
        assert all(h.data_type in set(DataType) for h in first)
