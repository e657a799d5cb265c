import random

import networkx as nx
import pytest

from cppgen.lexical import DEFAULT_LEXICON_DIR, LexicalDatabase

from helpers import load_graph_independently, oracle_path_similarity

LEX = LexicalDatabase()
FIRST_SENSE, EDGES = load_graph_independently()
GRAPH = nx.Graph(EDGES)


class TestDatabase:
    def test_default_directory_bundled(self):
        assert (DEFAULT_LEXICON_DIR / "index.noun").is_file()
        assert (DEFAULT_LEXICON_DIR / "data.noun").is_file()

    def test_synonyms_share_first_sense(self):
        assert LEX.first_sense("phone") == LEX.first_sense("telephone")
        assert LEX.first_sense("pic") == LEX.first_sense("photo")
        assert LEX.first_sense("e-mail") == LEX.first_sense("email")

    def test_multiword_lemma_lookup(self):
        assert "phone number" in LEX
        assert LEX.first_sense("phone number") == LEX.first_sense("telephone_number")

    def test_unknown_word(self):
        assert LEX.first_sense("zzzunknown") is None
        assert LEX.path_similarity("zzzunknown", "location") == 0.0

    def test_identical_word(self):
        assert LEX.path_similarity("location", "location") == 1.0

    def test_symmetry(self):
        words = ["location", "position", "photo", "email", "device", "payment"]
        for a in words:
            for b in words:
                assert LEX.path_similarity(a, b) == LEX.path_similarity(b, a)

    def test_position_location_third(self):
        # position -> point -> location: two hops
        assert LEX.path_similarity("position", "location") == pytest.approx(1 / 3, abs=1e-12)

    def test_whereabouts_location_half(self):
        assert LEX.path_similarity("whereabouts", "location") == pytest.approx(0.5, abs=1e-12)

    def test_range(self):
        lemmas = sorted(FIRST_SENSE)
        rng = random.Random(7)
        for _ in range(100):
            a, b = rng.choice(lemmas), rng.choice(lemmas)
            value = LEX.path_similarity(a, b)
            assert 0.0 <= value <= 1.0

    def test_matches_networkx_oracle(self):
        lemmas = sorted(FIRST_SENSE)
        rng = random.Random(42)
        pairs = [(rng.choice(lemmas), rng.choice(lemmas)) for _ in range(300)]
        pairs += [("nonexistentword", "location"), ("location", "nonexistentword")]
        for a, b in pairs:
            expected = oracle_path_similarity(a, b, FIRST_SENSE, GRAPH)
            assert LEX.path_similarity(a, b) == pytest.approx(expected, abs=1e-12), (a, b)
