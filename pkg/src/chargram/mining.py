"""Text mining tools: related queries, related documents, alignment, NER.

Related queries are one-edit variants (deletion, substitution, insertion)
of the query that actually occur in the corpus. Substitution and insertion
candidates are found by descending the tree to the edit point and branching
over the characters the tree offers there, then matching the remainder.

Related documents use Jensen-Shannon divergence between the documents'
windowed n-gram distributions (base-2 logs, similarity = 1 - sqrt(JSD)),
which is 1 for identical documents and 0 for disjoint supports.

Document comparison is seed-and-extend local alignment: every trigram
shared by the two documents seeds an extension that grows leftward then
rightward, one character per step on either or both sides, while the
Levenshtein distance of the two spans stays within ``floor(m * delta)``
(m = shorter span). Distances ignore punctuation and letter case ("Ham"
to "Cham" is one insertion); reported spans are raw text coordinates.
Each step's distance comes from an incrementally grown dynamic-programming
frontier, so it is exact, never a heuristic approximation.
"""

from __future__ import annotations

import json
import logging
import math
import unicodedata
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import lm
from .errors import FormatError, InvalidArgumentError, NotFoundError, VersionError

logger = logging.getLogger(__name__)

SIMILARITY_FORMAT = "chargram-similarity"
SIMILARITY_VERSION = 1
ENTITIES_FORMAT = "chargram-entities"
ENTITIES_VERSION = 1

JSD_WINDOW = 7
RELATED_DOCS_LIMIT = 20
ALIGN_DELTA = 0.2
ALIGN_MIN_LEN = 3

DELETION = "deletion"
SUBSTITUTION = "substitution"
INSERTION = "insertion"


# ----------------------------------------------------------------------
# related queries


@dataclass
class RelatedQuery:
    text: str
    edit_op: str
    log_prob: float


def related_queries(index, query: str, limit: int = 10, corpus=None) -> list[RelatedQuery]:
    """One-edit variants of ``query`` occurring in the corpus, most probable first.

    Candidates longer than the index depth are verified against document
    text when a corpus is supplied, otherwise skipped.
    """
    if len(query) < 2:
        raise InvalidArgumentError("query must be at least 2 characters")
    candidates: dict[str, str] = {}

    def offer(text: str, op: str) -> None:
        if text and text != query and text not in candidates:
            if _occurs(index, corpus, text):
                candidates[text] = op

    for i in range(len(query)):
        offer(query[:i] + query[i + 1 :], DELETION)
    for i in range(len(query)):
        for ch in _branch_chars(index, corpus, query[:i]):
            if ch != query[i]:
                offer(query[:i] + ch + query[i + 1 :], SUBSTITUTION)
    for i in range(len(query) + 1):
        for ch in _branch_chars(index, corpus, query[:i]):
            offer(query[:i] + ch + query[i:], INSERTION)

    ranked = [
        RelatedQuery(text, op, lm.collection_prob(index, text))
        for text, op in candidates.items()
    ]
    ranked.sort(key=lambda r: (-r.log_prob, r.text))
    return ranked[:limit]


def _branch_chars(index, corpus, prefix: str) -> list[str]:
    """Characters the corpus offers immediately after ``prefix``."""
    if len(prefix) < index.k:
        if not prefix:
            return index.next_chars(None)
        pos = index.walk(prefix)
        return index.next_chars(*pos) if pos is not None else []
    if corpus is None:
        return []
    chars = {
        doc.text[i + len(prefix)]
        for doc in corpus.documents.values()
        for i in _find_all(doc.text, prefix)
        if i + len(prefix) < len(doc.text)
    }
    return sorted(chars)


def _occurs(index, corpus, text: str) -> bool:
    if len(text) <= index.k:
        return index.match(text).exact
    if corpus is None:
        return False
    head = index.match(text[: index.k])
    if not head.exact:
        return False
    return any(
        corpus.documents[doc_id].text[pos : pos + len(text)] == text
        for doc_id, pos in head.occurrences
    )


def _find_all(text: str, sub: str):
    start = 0
    while True:
        i = text.find(sub, start)
        if i < 0:
            return
        yield i
        start = i + 1


# ----------------------------------------------------------------------
# related documents (Jensen-Shannon similarity)


def jsd_similarity(model_a: lm.DocumentModel, model_b: lm.DocumentModel, window: int = JSD_WINDOW) -> float:
    """Similarity in [0, 1] between two documents' n-gram distributions.

    Documents shorter than ``window`` fall back to the longest window both
    documents support. The mixture distribution keeps both divergence terms
    finite without any extra floor, so identical documents score exactly 1
    and disjoint supports score 0.
    """
    if window < 1:
        raise InvalidArgumentError("window must be >= 1")
    w = min(window, model_a.length, model_b.length)
    return _jsd_from_counts(model_a.ngram_counts(w), model_b.ngram_counts(w))


def _distribution(counts: dict[str, int]) -> tuple[np.ndarray, np.ndarray]:
    items = sorted(counts.items())
    grams = np.array([g for g, _ in items])
    values = np.array([c for _, c in items], dtype=np.float64)
    return grams, values / values.sum()


def _half_kld(ga, pa, gb, pb) -> float:
    # sum over the support of P of p * log2(2p / (p + q)), q = 0 off-support
    idx = np.searchsorted(gb, ga)
    idx_c = np.minimum(idx, len(gb) - 1)
    q = np.where((idx < len(gb)) & (gb[idx_c] == ga), pb[idx_c], 0.0)
    return float(np.sum(pa * np.log2(2.0 * pa / (pa + q))))


def _jsd_from_counts(counts_a: dict[str, int], counts_b: dict[str, int]) -> float:
    ga, pa = _distribution(counts_a)
    gb, pb = _distribution(counts_b)
    divergence = 0.5 * _half_kld(ga, pa, gb, pb) + 0.5 * _half_kld(gb, pb, ga, pa)
    return 1.0 - math.sqrt(max(divergence, 0.0))


class SimilarityMatrix:
    """Symmetric all-pairs document similarity with self-similarity 1."""

    def __init__(self, doc_ids: list[str], window: int = JSD_WINDOW):
        self.doc_ids = sorted(doc_ids)
        self.window = window
        self._values: dict[tuple[str, str], float] = {}

    @staticmethod
    def _key(a: str, b: str) -> tuple[str, str]:
        return (a, b) if a <= b else (b, a)

    def set(self, a: str, b: str, value: float) -> None:
        self._values[self._key(a, b)] = value

    def get(self, a: str, b: str) -> float:
        if a == b:
            return 1.0
        return self._values[self._key(a, b)]

    def covers(self, doc_id: str) -> bool:
        return doc_id in set(self.doc_ids)


def build_similarity_matrix(models: dict[str, lm.DocumentModel], window: int = JSD_WINDOW) -> SimilarityMatrix:
    matrix = SimilarityMatrix(list(models), window)
    ids = matrix.doc_ids
    w = min([window] + [models[d].length for d in ids])
    dists = {d: _distribution(models[d].ngram_counts(w)) for d in ids}
    for i, a in enumerate(ids):
        ga, pa = dists[a]
        for b in ids[i + 1 :]:
            gb, pb = dists[b]
            div = 0.5 * _half_kld(ga, pa, gb, pb) + 0.5 * _half_kld(gb, pb, ga, pa)
            matrix.set(a, b, 1.0 - math.sqrt(max(div, 0.0)))
    return matrix


def related_documents(matrix: SimilarityMatrix, doc_id: str, limit: int = RELATED_DOCS_LIMIT) -> list[tuple[str, float]]:
    """Most similar documents to ``doc_id``, excluding itself."""
    if doc_id not in matrix.doc_ids:
        raise NotFoundError(f"unknown document id: {doc_id}")
    others = [(other, matrix.get(doc_id, other)) for other in matrix.doc_ids if other != doc_id]
    others.sort(key=lambda item: (-item[1], item[0]))
    return others[:limit]


def save_similarity_matrix(matrix: SimilarityMatrix, path) -> None:
    payload = {
        "format": SIMILARITY_FORMAT,
        "version": SIMILARITY_VERSION,
        "window": matrix.window,
        "doc_ids": matrix.doc_ids,
        "entries": [[a, b, v] for (a, b), v in sorted(matrix._values.items())],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def load_similarity_matrix(path) -> SimilarityMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"corrupt similarity matrix: {exc.msg}", offset=exc.pos) from exc
    if not isinstance(data, dict) or data.get("format") != SIMILARITY_FORMAT:
        raise FormatError("not a similarity matrix file")
    if data.get("version") != SIMILARITY_VERSION:
        raise VersionError(data.get("version"), SIMILARITY_VERSION)
    matrix = SimilarityMatrix(data["doc_ids"], data["window"])
    for a, b, v in data["entries"]:
        matrix.set(a, b, v)
    return matrix


# ----------------------------------------------------------------------
# document comparison (seed-and-extend local alignment)


@dataclass
class SharedSequence:
    a_start: int
    a_len: int
    b_start: int
    b_len: int
    edit_distance: int
    seed: str

    @property
    def length(self) -> int:
        return max(self.a_len, self.b_len)


def is_punctuation(ch: str) -> bool:
    return unicodedata.category(ch)[0] in ("P", "S")


def strip_punctuation(text: str) -> str:
    return "".join(c for c in text if not is_punctuation(c))


def fold_char(ch: str) -> str:
    # per-character lowercase; multi-character expansions keep the original
    # so the character-level DP stays one code per position
    low = ch.lower()
    return low if len(low) == 1 else ch


def comparable_text(text: str) -> str:
    """Text as the aligner scores it: punctuation removed, case folded."""
    return "".join(fold_char(c) for c in text if not is_punctuation(c))


class _EditFrontier:
    """Exact Levenshtein of two append-only strings, grown one char at a time.

    Keeps the full DP matrix; appending a character to either string adds
    one row or column in O(n) vectorized work. Values equal the plain full
    recomputation by construction.
    """

    def __init__(self, a: str, b: str):
        self.na, self.nb = len(a), len(b)
        self.cap_a = max(16, self.na + 1)
        self.cap_b = max(16, self.nb + 1)
        self.ca = np.zeros(self.cap_a, dtype=np.int32)
        self.cb = np.zeros(self.cap_b, dtype=np.int32)
        self.ca[: self.na] = [ord(c) for c in a]
        self.cb[: self.nb] = [ord(c) for c in b]
        self.m = np.zeros((self.cap_a + 1, self.cap_b + 1), dtype=np.int32)
        self.m[0, : self.nb + 1] = np.arange(self.nb + 1)
        for i in range(1, self.na + 1):
            self.m[i, : self.nb + 1] = self._next_row(self.m[i - 1, : self.nb + 1], i, self.ca[i - 1])

    def _next_row(self, prev: np.ndarray, first: int, code: int) -> np.ndarray:
        nb = len(prev) - 1
        t = np.empty(nb + 1, dtype=np.int32)
        t[0] = first
        if nb:
            cost = (self.cb[:nb] != code).astype(np.int32)
            np.minimum(prev[1:] + 1, prev[:-1] + cost, out=t[1:])
        offsets = np.arange(nb + 1, dtype=np.int32)
        return offsets + np.minimum.accumulate(t - offsets)

    def _next_col(self, prev: np.ndarray, first: int, code: int) -> np.ndarray:
        na = len(prev) - 1
        t = np.empty(na + 1, dtype=np.int32)
        t[0] = first
        if na:
            cost = (self.ca[:na] != code).astype(np.int32)
            np.minimum(prev[1:] + 1, prev[:-1] + cost, out=t[1:])
        offsets = np.arange(na + 1, dtype=np.int32)
        return offsets + np.minimum.accumulate(t - offsets)

    def distance(self) -> int:
        return int(self.m[self.na, self.nb])

    def peek(self, x: str | None, y: str | None) -> int:
        """Distance after appending x to a and/or y to b, without committing."""
        if x is not None and y is not None:
            row = self._next_row(self.m[self.na, : self.nb + 1], self.na + 1, ord(x))
            col = self._next_col(self.m[: self.na + 1, self.nb], self.nb + 1, ord(y))
            corner = min(
                self.m[self.na, self.nb] + (x != y),
                int(row[self.nb]) + 1,
                int(col[self.na]) + 1,
            )
            return int(corner)
        if x is not None:
            return int(self._next_row(self.m[self.na, : self.nb + 1], self.na + 1, ord(x))[self.nb])
        if y is not None:
            return int(self._next_col(self.m[: self.na + 1, self.nb], self.nb + 1, ord(y))[self.na])
        raise InvalidArgumentError("nothing to append")

    def append(self, x: str | None, y: str | None) -> None:
        if x is not None:
            self._grow_a()
            row = self._next_row(self.m[self.na, : self.nb + 1], self.na + 1, ord(x))
            self.na += 1
            self.ca[self.na - 1] = ord(x)
            self.m[self.na, : self.nb + 1] = row
        if y is not None:
            self._grow_b()
            col = self._next_col(self.m[: self.na + 1, self.nb], self.nb + 1, ord(y))
            self.nb += 1
            self.cb[self.nb - 1] = ord(y)
            self.m[: self.na + 1, self.nb] = col

    def _grow_a(self) -> None:
        if self.na + 1 >= self.cap_a:
            self.cap_a *= 2
            self.ca = np.resize(self.ca, self.cap_a)
            m = np.zeros((self.cap_a + 1, self.cap_b + 1), dtype=np.int32)
            m[: self.na + 1, : self.nb + 1] = self.m[: self.na + 1, : self.nb + 1]
            self.m = m

    def _grow_b(self) -> None:
        if self.nb + 1 >= self.cap_b:
            self.cap_b *= 2
            self.cb = np.resize(self.cb, self.cap_b)
            m = np.zeros((self.cap_a + 1, self.cap_b + 1), dtype=np.int32)
            m[: self.na + 1, : self.nb + 1] = self.m[: self.na + 1, : self.nb + 1]
            self.m = m


class _Extension:
    """State of one seed extension over raw texts with punctuation skipped."""

    def __init__(self, text_a: str, text_b: str, pa: int, pb: int, seed_len: int, delta: float):
        self.text_a, self.text_b = text_a, text_b
        self.a0, self.a1 = pa, pa + seed_len
        self.b0, self.b1 = pb, pb + seed_len
        self.delta = delta
        self.sa = comparable_text(text_a[self.a0 : self.a1])
        self.sb = comparable_text(text_b[self.b0 : self.b1])
        self.ed = 0
        self._dp: _EditFrontier | None = None
        self._dp_left = False

    def _bound(self, extra_a: int = 0, extra_b: int = 0) -> int:
        m = min(len(self.sa) + extra_a, len(self.sb) + extra_b)
        return math.floor(m * self.delta)

    def _next_left(self, side: str) -> tuple[str, int] | None:
        text, lo = (self.text_a, self.a0) if side == "a" else (self.text_b, self.b0)
        i = lo - 1
        while i >= 0 and is_punctuation(text[i]):
            i -= 1
        return (fold_char(text[i]), lo - i) if i >= 0 else None

    def _next_right(self, side: str) -> tuple[str, int] | None:
        text, hi = (self.text_a, self.a1) if side == "a" else (self.text_b, self.b1)
        i = hi
        while i < len(text) and is_punctuation(text[i]):
            i += 1
        return (fold_char(text[i]), i - hi + 1) if i < len(text) else None

    def _dp_for(self, left: bool) -> _EditFrontier:
        if self._dp is None or self._dp_left is not left:
            a = self.sa[::-1] if left else self.sa
            b = self.sb[::-1] if left else self.sb
            self._dp = _EditFrontier(a, b)
            self._dp_left = left
        return self._dp

    def _phase(self, left: bool) -> bool:
        moved = False
        nxt = self._next_left if left else self._next_right
        while True:
            a_step = nxt("a")
            b_step = nxt("b")
            if a_step is None and b_step is None:
                return moved
            if self.ed == 0 and a_step is not None and b_step is not None and a_step[0] == b_step[0]:
                # identical continuation cannot change the distance
                self._commit(left, a_step, b_step)
                self._dp = None
                moved = True
                continue
            dp = self._dp_for(left)
            moves = []
            if a_step is not None and b_step is not None:
                moves.append((dp.peek(a_step[0], b_step[0]), 0, a_step, b_step))
            if a_step is not None:
                moves.append((dp.peek(a_step[0], None), 1, a_step, None))
            if b_step is not None:
                moves.append((dp.peek(None, b_step[0]), 2, None, b_step))
            moves.sort(key=lambda mv: (mv[0], mv[1]))
            ed, _, a_mv, b_mv = moves[0]
            if ed > self._bound(extra_a=1 if a_mv else 0, extra_b=1 if b_mv else 0):
                return moved
            dp.append(a_mv[0] if a_mv else None, b_mv[0] if b_mv else None)
            self._commit(left, a_mv, b_mv)
            self.ed = ed
            moved = True

    def _commit(self, left: bool, a_mv, b_mv) -> None:
        if a_mv is not None:
            if left:
                self.a0 -= a_mv[1]
                self.sa = a_mv[0] + self.sa
            else:
                self.a1 += a_mv[1]
                self.sa = self.sa + a_mv[0]
        if b_mv is not None:
            if left:
                self.b0 -= b_mv[1]
                self.sb = b_mv[0] + self.sb
            else:
                self.b1 += b_mv[1]
                self.sb = self.sb + b_mv[0]

    def run(self) -> None:
        # Left before right within each round, iterated to a fixed point:
        # early rounds are bound-limited by short spans, later rounds can
        # cross differences the first pass could not afford.
        while True:
            moved_left = self._phase(left=True)
            self._dp = None
            moved_right = self._phase(left=False)
            self._dp = None
            if not (moved_left or moved_right):
                return


def compare_documents(
    doc_a,
    doc_b,
    delta: float = ALIGN_DELTA,
    min_len: int = ALIGN_MIN_LEN,
) -> list[SharedSequence]:
    """All shared sequences between two documents, longest first.

    Every shared trigram seeds an extension unless it already lies inside an
    emitted alignment on a compatible diagonal. Results contained in a longer
    result are merged away.
    """
    text_a = doc_a.text if hasattr(doc_a, "text") else doc_a
    text_b = doc_b.text if hasattr(doc_b, "text") else doc_b
    if len(text_a) < 3 or len(text_b) < 3:
        raise InvalidArgumentError("both documents must be at least 3 characters")
    if delta < 0:
        raise InvalidArgumentError("delta must be >= 0")
    pos_a = _trigram_positions(text_a)
    pos_b = _trigram_positions(text_b)
    emitted: list[SharedSequence] = []
    for seed in sorted(set(pos_a) & set(pos_b)):
        for pa in pos_a[seed]:
            for pb in pos_b[seed]:
                if any(_covers(seq, pa, pb) for seq in emitted):
                    continue
                ext = _Extension(text_a, text_b, pa, pb, 3, delta)
                ext.run()
                seq = SharedSequence(
                    a_start=ext.a0,
                    a_len=ext.a1 - ext.a0,
                    b_start=ext.b0,
                    b_len=ext.b1 - ext.b0,
                    edit_distance=ext.ed,
                    seed=seed,
                )
                emitted.append(seq)
    merged = _merge_contained(emitted)
    results = [s for s in merged if min(s.a_len, s.b_len) >= min_len]
    results.sort(key=lambda s: (-s.length, s.a_start, s.b_start))
    return results


def _trigram_positions(text: str) -> dict[str, list[int]]:
    # keyed by case-folded trigram so "Ham"/"ham" seed together
    positions: dict[str, list[int]] = {}
    for i in range(len(text) - 2):
        positions.setdefault("".join(fold_char(c) for c in text[i : i + 3]), []).append(i)
    return positions


def _covers(seq: SharedSequence, pa: int, pb: int, width: int = 3) -> bool:
    return (
        seq.a_start <= pa
        and pa + width <= seq.a_start + seq.a_len
        and seq.b_start <= pb
        and pb + width <= seq.b_start + seq.b_len
        and abs((pa - seq.a_start) - (pb - seq.b_start)) <= seq.edit_distance
    )


def _contained_in(inner: SharedSequence, outer: SharedSequence) -> bool:
    return (
        outer.a_start <= inner.a_start
        and inner.a_start + inner.a_len <= outer.a_start + outer.a_len
        and outer.b_start <= inner.b_start
        and inner.b_start + inner.b_len <= outer.b_start + outer.b_len
        and abs((inner.a_start - outer.a_start) - (inner.b_start - outer.b_start)) <= outer.edit_distance
    )


def _merge_contained(sequences: list[SharedSequence]) -> list[SharedSequence]:
    ordered = sorted(sequences, key=lambda s: (-s.length, s.a_start, s.b_start))
    kept: list[SharedSequence] = []
    for seq in ordered:
        if not any(seq is not other and _contained_in(seq, other) for other in kept):
            kept.append(seq)
    return kept


# ----------------------------------------------------------------------
# gazetteer entity extraction


@dataclass
class EntityOccurrence:
    entity: str
    entity_type: str
    doc_id: str
    positions: list[int]


def load_gazetteer(path) -> list[tuple[str, str]]:
    """Parse a gazetteer file: one ``surface<TAB>type`` entry per line."""
    entries = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            logger.warning("gazetteer %s line %d malformed; skipped", path, lineno)
            continue
        entries.append((parts[0], parts[1]))
    return entries


def extract_entities(index, corpus, gazetteer: list[tuple[str, str]]) -> list[EntityOccurrence]:
    """Exact occurrences of every gazetteer surface form, grouped per document.

    Surfaces longer than the index depth are located by matching their first
    k characters and verifying the remainder against the document text.
    """
    occurrences: list[EntityOccurrence] = []
    for surface, entity_type in sorted(set(gazetteer)):
        result = index.match(surface[: index.k])
        if not result.exact:
            continue
        per_doc: dict[str, list[int]] = {}
        for doc_id, pos in result.occurrences:
            if len(surface) > index.k:
                text = corpus.get_document(doc_id).text
                if text[pos : pos + len(surface)] != surface:
                    continue
            per_doc.setdefault(doc_id, []).append(pos)
        for doc_id in sorted(per_doc):
            occurrences.append(EntityOccurrence(surface, entity_type, doc_id, sorted(per_doc[doc_id])))
    return occurrences


def save_entities(occurrences: list[EntityOccurrence], path) -> None:
    payload = {
        "format": ENTITIES_FORMAT,
        "version": ENTITIES_VERSION,
        "entities": [
            {"entity": o.entity, "type": o.entity_type, "doc_id": o.doc_id, "positions": o.positions}
            for o in occurrences
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def load_entities(path) -> list[EntityOccurrence]:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"corrupt entity store: {exc.msg}", offset=exc.pos) from exc
    if not isinstance(data, dict) or data.get("format") != ENTITIES_FORMAT:
        raise FormatError("not an entity store")
    if data.get("version") != ENTITIES_VERSION:
        raise VersionError(data.get("version"), ENTITIES_VERSION)
    return [
        EntityOccurrence(rec["entity"], rec["type"], rec["doc_id"], rec["positions"])
        for rec in data["entities"]
    ]
