"""Shortest-path word similarity over a WordNet-format noun database.

The database directory must hold ``index.noun`` and ``data.noun`` in the
standard WordNet file format; the bundled compact database (see
tools/gen_wordnet_mini.py) is used when no directory is configured, and a
full WordNet ``dict`` directory is a drop-in replacement.
"""

from __future__ import annotations

from collections import deque
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent / "data"
DEFAULT_LEXICON_DIR = DATA_DIR / "wordnet_mini"


def _data_lines(path: Path):
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.startswith(" ") or not line.strip():
                continue  # license/header lines
            yield line.rstrip("\n")


class LexicalDatabase:
    """Noun hypernym graph with first-sense shortest-path similarity.

    path_similarity(w1, w2) = 1 / (1 + d) where d is the shortest path
    between the words' first-sense synsets along hypernym links (either
    direction); 0.0 when a word is unknown or no path exists.
    """

    def __init__(self, directory: str | Path | None = None):
        directory = Path(directory) if directory else DEFAULT_LEXICON_DIR
        self.directory = directory
        self._first_sense: dict[str, str] = {}
        self._edges: dict[str, list[str]] = {}
        self._cache: dict[tuple[str, str], float] = {}
        self._load(directory)

    def _load(self, directory: Path):
        index_path = directory / "index.noun"
        data_path = directory / "data.noun"
        for line in _data_lines(index_path):
            fields = line.split()
            lemma, pos = fields[0], fields[1]
            if pos != "n":
                continue
            synset_cnt = int(fields[2])
            p_cnt = int(fields[3])
            offsets = fields[6 + p_cnt:6 + p_cnt + synset_cnt]
            if offsets:
                self._first_sense[lemma.lower()] = offsets[0]
        for line in _data_lines(data_path):
            body = line.split(" | ", 1)[0]
            fields = body.split()
            offset, ss_type = fields[0], fields[2]
            if ss_type != "n":
                continue
            w_cnt = int(fields[3], 16)
            p_idx = 4 + 2 * w_cnt
            p_cnt = int(fields[p_idx])
            adj = self._edges.setdefault(offset, [])
            for k in range(p_cnt):
                sym, target, pos = fields[p_idx + 1 + 4 * k:p_idx + 4 + 4 * k]
                if sym in ("@", "@i") and pos == "n":
                    adj.append(target)
                    self._edges.setdefault(target, []).append(offset)

    @staticmethod
    def normalize(word: str) -> str:
        return word.strip().lower().replace(" ", "_")

    def first_sense(self, word: str) -> str | None:
        return self._first_sense.get(self.normalize(word))

    def __contains__(self, word: str) -> bool:
        return self.first_sense(word) is not None

    def shortest_path_distance(self, s1: str, s2: str) -> int | None:
        if s1 == s2:
            return 0
        seen = {s1}
        frontier = deque([(s1, 0)])
        while frontier:
            node, d = frontier.popleft()
            for nxt in self._edges.get(node, ()):
                if nxt == s2:
                    return d + 1
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append((nxt, d + 1))
        return None

    def path_similarity(self, w1: str, w2: str) -> float:
        s1, s2 = self.first_sense(w1), self.first_sense(w2)
        if s1 is None or s2 is None:
            return 0.0
        key = (s1, s2) if s1 <= s2 else (s2, s1)
        if key not in self._cache:
            d = self.shortest_path_distance(*key)
            self._cache[key] = 0.0 if d is None else 1.0 / (1.0 + d)
        return self._cache[key]
