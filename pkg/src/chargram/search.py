"""End-to-end query answering: candidates, tiering, ranking, snippets.

Queries longer than the index depth ``k`` are handled by sliding windows:
candidate documents are those containing at least one ``min_match_len``
window of the query, each candidate's tier is the length of the longest
query substring it actually contains, and ranking within a tier uses the
Jelinek-Mercer chain score. Exact matches (tier = query length) therefore
always precede partial ones.

Snippets are windows of at most ``w`` characters. A window's score is
``delta ** alpha * mu ** (1 - alpha)`` where ``delta`` counts the distinct
maximal matched query segments fully inside the window and ``mu`` counts
their occurrences. Candidate windows are anchored at segment-occurrence
boundaries, which is sufficient to reach the best achievable score over
all fixed-width windows.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import lm
from .errors import InvalidArgumentError

SNIPPET_WIDTH = 100
SNIPPET_ALPHA = 0.9
DEFAULT_MIN_MATCH_LEN = 3
MAX_SNIPPETS = 3


@dataclass
class Snippet:
    text: str
    start: int  # character offset of the snippet in the document
    highlight_spans: list[tuple[int, int]]  # document-absolute (start, length)
    score: float


@dataclass
class SearchResult:
    doc_id: str
    title: str
    exact: bool
    matched_len: int
    log_score: float
    snippets: list[Snippet] = field(default_factory=list)


@dataclass
class MatchedSpan:
    """One occurrence of a maximal matched query segment in a document."""

    start: int
    length: int
    segment: str

    @property
    def end(self) -> int:
        return self.start + self.length


def matched_segments(text: str, query: str) -> tuple[int, list[MatchedSpan]]:
    """Longest shared length and all occurrences of maximal query segments.

    A maximal segment is a substring of the query occurring in ``text``
    that no longer matched substring of the query contains.
    """
    m = len(query)
    lengths = [0] * m
    ell = 0
    for i in range(m):
        if ell > 0:
            ell -= 1  # dropping one character keeps the remainder matched
        while i + ell < m and query[i : i + ell + 1] in text:
            ell += 1
        lengths[i] = ell
    segments = []
    for i in range(m):
        if lengths[i] >= 1 and (i == 0 or lengths[i - 1] <= lengths[i]):
            segments.append(query[i : i + lengths[i]])
    spans: list[MatchedSpan] = []
    for seg in sorted(set(segments)):
        start = 0
        while True:
            pos = text.find(seg, start)
            if pos < 0:
                break
            spans.append(MatchedSpan(pos, len(seg), seg))
            start = pos + 1
    spans.sort(key=lambda s: (s.start, -s.length, s.segment))
    return max(lengths, default=0), spans


def score_snippet(delta: int, mu: int, alpha: float = SNIPPET_ALPHA) -> float:
    """Snippet score ``delta**alpha * mu**(1-alpha)``.

    ``delta`` is the number of distinct matched query segments in the
    window, ``mu`` the total occurrence count (so ``mu >= delta``). When
    every segment occurs once the expression collapses exactly to delta.
    """
    if delta < 1:
        raise InvalidArgumentError("delta must be >= 1")
    if mu < delta:
        raise InvalidArgumentError("mu must be >= delta")
    if delta == mu:
        return float(delta)
    return delta**alpha * mu ** (1.0 - alpha)


def _window_score(spans: list[MatchedSpan], left: int, right: int) -> tuple[float, list[MatchedSpan]]:
    inside = [s for s in spans if s.start >= left and s.end <= right]
    if not inside:
        return 0.0, []
    delta = len({s.segment for s in inside})
    return score_snippet(delta, len(inside)), inside


def generate_snippets(
    document, spans: list[MatchedSpan], w: int = SNIPPET_WIDTH, limit: int = MAX_SNIPPETS
) -> list[Snippet]:
    """Top scoring non-overlapping windows of width <= ``w``."""
    text = document.text if hasattr(document, "text") else document
    if not spans:
        return []
    n = len(text)
    max_left = max(0, n - w)
    lefts = sorted({min(max(0, s.start), max_left) for s in spans} | {min(max(0, s.end - w), max_left) for s in spans})
    candidates = []
    for left in lefts:
        right = min(left + w, n)
        score, inside = _window_score(spans, left, right)
        if score > 0.0:
            candidates.append((score, left, right, inside))
    candidates.sort(key=lambda c: (-c[0], c[1]))
    chosen: list[tuple[float, int, int, list[MatchedSpan]]] = []
    for cand in candidates:
        if any(cand[1] < kept[2] and kept[1] < cand[2] for kept in chosen):
            continue
        chosen.append(cand)
        if len(chosen) == limit:
            break
    snippets = []
    for score, left, right, inside in sorted(chosen, key=lambda c: (-c[0], c[1])):
        left, right = _trim_to_word_boundaries(text, left, right, inside)
        snippets.append(
            Snippet(
                text=text[left:right],
                start=left,
                highlight_spans=[(s.start, s.length) for s in inside],
                score=score,
            )
        )
    return snippets


def _trim_to_word_boundaries(text: str, left: int, right: int, inside: list[MatchedSpan]) -> tuple[int, int]:
    # Shrink padding up to the outermost highlighted span, stopping after
    # whitespace so windows do not open or close mid-word when avoidable.
    first = min(s.start for s in inside)
    last = max(s.end for s in inside)
    if left > 0:
        cut = text.rfind(" ", left, first)
        if cut >= 0:
            left = cut + 1
    if right < len(text):
        cut = text.find(" ", last, right)
        if cut >= 0:
            right = cut
    return left, right


def search(
    corpus,
    index,
    models: dict[str, lm.DocumentModel],
    params: lm.ModelParams,
    query: str,
    limit: int = 10,
    min_match_len: int = DEFAULT_MIN_MATCH_LEN,
    w: int = SNIPPET_WIDTH,
) -> list[SearchResult]:
    """Ranked results with snippets for ``query``.

    Results are ordered by (matched length desc, score desc, doc_id asc);
    candidates sharing less than ``min_match_len`` characters with the
    query are dropped.
    """
    if not query:
        raise InvalidArgumentError("query must be non-empty")
    if limit < 1:
        raise InvalidArgumentError("limit must be >= 1")
    m = min(min_match_len, len(query), index.k)
    windows = {query[i : i + m] for i in range(len(query) - m + 1)}
    candidates: set[str] = set()
    for window in sorted(windows):
        result = index.match(window)
        if result.exact:
            candidates.update(doc_id for doc_id, _ in result.occurrences)
    scored = []
    for doc_id in sorted(candidates):
        doc = corpus.get_document(doc_id)
        matched_len, spans = matched_segments(doc.text, query)
        if matched_len < m:
            continue
        qscore = lm.score(models[doc_id], index, params, query)
        scored.append((doc, matched_len, qscore.log_score, spans))
    scored.sort(key=lambda r: (-r[1], -r[2], r[0].doc_id))
    results = []
    for doc, matched_len, log_score, spans in scored[:limit]:
        results.append(
            SearchResult(
                doc_id=doc.doc_id,
                title=doc.title,
                exact=matched_len == len(query),
                matched_len=matched_len,
                log_score=log_score,
                snippets=generate_snippets(doc, spans, w=w),
            )
        )
    return results
