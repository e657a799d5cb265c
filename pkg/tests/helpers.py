"""Shared test fixtures and independent oracle implementations.

Oracles deliberately reimplement the specified behavior with different
algorithms/libraries than the production code so the two sides can check
each other.
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np
from PIL import Image

from cppgen.lexical import DEFAULT_LEXICON_DIR
from cppgen.detect import EXEMPLAR_DIR

DATA_DIR = Path(__file__).resolve().parent / "data"
MICRO_DATASET = DATA_DIR / "micro_dataset"


# --- keyword scan oracle -------------------------------------------------------

def oracle_scan(text: str, taxonomy) -> set[tuple]:
    """Regex-based reimplementation of the keyword scan (unordered)."""
    low = text.lower()
    hits = set()
    words = [(m.start(), m.group()) for m in re.finditer(r"\S+", low)]
    for entry in taxonomy:
        for kw in entry.keywords:
            if " " in kw:
                for m in re.finditer("(?=" + re.escape(kw) + ")", low):
                    hits.add((entry.data_type, kw, m.start(), m.start() + len(kw),
                              "string_ngram"))
            else:
                for wstart, word in words:
                    pos = word.find(kw)
                    if pos != -1:
                        hits.add((entry.data_type, kw, wstart + pos,
                                  wstart + pos + len(kw), "word_substring"))
    return hits


def as_tuples(hits) -> set[tuple]:
    return {(h.data_type, h.keyword, h.start, h.end, h.mode) for h in hits}


# --- lexical oracle -------------------------------------------------------------

def load_graph_independently(directory=DEFAULT_LEXICON_DIR):
    """Parse the WordNet-format files with minimal standalone code."""
    first_sense = {}
    for line in (directory / "index.noun").read_text(encoding="utf-8").splitlines():
        if line.startswith(" ") or not line.strip():
            continue
        f = line.split()
        lemma, p_cnt, synset_cnt = f[0], int(f[3]), int(f[2])
        offsets = f[6 + p_cnt:6 + p_cnt + synset_cnt]
        first_sense[lemma] = offsets[0]
    edges = []
    for line in (directory / "data.noun").read_text(encoding="utf-8").splitlines():
        if line.startswith(" ") or not line.strip():
            continue
        f = line.split(" | ")[0].split()
        offset = f[0]
        w_cnt = int(f[3], 16)
        p_idx = 4 + 2 * w_cnt
        for k in range(int(f[p_idx])):
            sym, target = f[p_idx + 1 + 4 * k], f[p_idx + 2 + 4 * k]
            if sym in ("@", "@i"):
                edges.append((offset, target))
    return first_sense, edges


def oracle_path_similarity(w1: str, w2: str, first_sense, graph) -> float:
    """networkx shortest path over the independently parsed graph."""
    import networkx as nx
    s1 = first_sense.get(w1.strip().lower().replace(" ", "_"))
    s2 = first_sense.get(w2.strip().lower().replace(" ", "_"))
    if s1 is None or s2 is None:
        return 0.0
    try:
        return 1.0 / (1.0 + nx.shortest_path_length(graph, s1, s2))
    except (nx.NetworkXNoPath, nx.NodeNotFound):
        return 0.0


def oracle_phrase_similarity(p1: str, p2: str, first_sense, graph) -> float:
    heads = [p.split()[-1].strip(",.;:!?\"'()[]{}") for p in (p1, p2)]
    sim = oracle_path_similarity(heads[0], heads[1], first_sense, graph)
    return 2.0 * sim / (len(p1.split()) + len(p2.split()))


# --- LCS / segment similarity oracle ----------------------------------------------

def oracle_lcs(a: str, b: str) -> int:
    """Brute force: extend a match from every start pair."""
    best = 0
    for i in range(len(a)):
        for j in range(len(b)):
            k = 0
            while i + k < len(a) and j + k < len(b) and a[i + k] == b[j + k]:
                k += 1
            if k > best:
                best = k
    return best


def oracle_segment_similarity(ret: str, gt: str) -> float:
    split = re.compile(r"[.,;:!?\n\r]+")
    rp = [p.strip().lower() for p in split.split(ret) if p.strip()]
    gp = [p.strip().lower() for p in split.split(gt) if p.strip()]
    assert rp and gp
    total = sum(oracle_lcs(a, b) / min(len(a), len(b)) for a in rp for b in gp)
    return total / min(len(rp), len(gp))


# --- greedy matcher oracle -----------------------------------------------------------

def oracle_match(pred, gt, beta, iou_fn):
    """Iterative global-argmax greedy matching (vs. the sort-based one)."""
    remaining_p = list(range(len(pred)))
    remaining_g = list(range(len(gt)))
    tp = []
    while True:
        best = None
        for i in remaining_p:
            for j in remaining_g:
                if pred[i].data_type is not gt[j].data_type:
                    continue
                v = iou_fn(pred[i].bbox, gt[j].bbox)
                if v <= beta:
                    continue
                if best is None or v > best[0] or (v == best[0] and (i, j) < best[1:]):
                    best = (v, i, j)
        if best is None:
            break
        _, i, j = best
        tp.append((i, j))
        remaining_p.remove(i)
        remaining_g.remove(j)
    return tp, remaining_p, remaining_g


# --- synthetic screenshots --------------------------------------------------------------

def blank_canvas(width=160, height=160) -> np.ndarray:
    return np.full((height, width), 255, dtype=np.uint8)


def paste_exemplar(canvas: np.ndarray, class_name: str, x: int, y: int,
                   variant: int = 0) -> tuple[int, int, int, int]:
    img = np.asarray(Image.open(EXEMPLAR_DIR / class_name / f"{variant}.png").convert("L"))
    h, w = img.shape
    canvas[y:y + h, x:x + w] = img
    return (x, y, w, h)


def draw_rect(canvas: np.ndarray, x: int, y: int, w: int, h: int, value: int = 0):
    canvas[y:y + h, x:x + w] = value
    return (x, y, w, h)


def save_png(canvas: np.ndarray, path):
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(canvas).save(path)
