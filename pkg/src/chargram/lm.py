"""Query scoring under collection and document n-gram models.

A query is scored as a chain of per-character conditional probabilities.
Each factor is read from the interpolated tree at the position of the
character's n-gram (the character plus at most ``max_order - 1`` preceding
characters). When the n-gram is absent, :func:`backoff_prob` shortens the
context from the left, discounting by ``len/(len+2)`` per failed level and
bottoming out at the zero-order ``1/|V|`` floor, so every character always
contributes a strictly positive factor and scores stay finite.

Final document ranking mixes the document and collection models per factor
(Jelinek-Mercer): ``lambda * P_D + (1 - lambda) * P_C``, combined in log
space. Mixing per factor rather than per whole query keeps long queries
from underflowing; the whole-query variant remains available via a flag.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from . import suffixtree
from .errors import FormatError, InvalidArgumentError, VersionError

DOCMODELS_FORMAT = "chargram-docmodels"
DOCMODELS_VERSION = 1

DEFAULT_JM_LAMBDA = 0.6


@dataclass
class ModelParams:
    max_order: int
    alphabet_size: int
    jm_lambda: float = DEFAULT_JM_LAMBDA

    def __post_init__(self):
        if not 0.0 <= self.jm_lambda <= 1.0:
            raise InvalidArgumentError(f"jm_lambda must be in [0, 1], got {self.jm_lambda}")
        if self.alphabet_size < 1:
            raise InvalidArgumentError("alphabet_size must be >= 1")
        if self.max_order < 2:
            raise InvalidArgumentError("max_order must be >= 2")

    @classmethod
    def for_index(cls, index: suffixtree.SuffixIndex, jm_lambda: float = DEFAULT_JM_LAMBDA):
        return cls(max_order=index.k, alphabet_size=index.alphabet_size, jm_lambda=jm_lambda)


@dataclass
class QueryScore:
    doc_id: str
    log_score: float
    matched_len: int


class DocumentModel:
    """Per-document n-gram model: the collection machinery over one document.

    Probabilities are interpolated from within-document counts; the
    zero-order floor uses the collection alphabet size so document and
    collection models share a probability space.
    """

    def __init__(self, doc_id: str, text: str, k: int, alphabet_size: int):
        if not text:
            raise InvalidArgumentError(f"document {doc_id} has no text")
        self.doc_id = doc_id
        self.length = len(text)
        self.k = k
        self.alphabet_size = alphabet_size
        self.index = suffixtree.build_from_pairs([(doc_id, text)], k=k, alphabet_size=alphabet_size)

    @classmethod
    def _from_index(cls, doc_id: str, index: suffixtree.SuffixIndex, length: int):
        model = cls.__new__(cls)
        model.doc_id = doc_id
        model.length = length
        model.k = index.k
        model.alphabet_size = index.alphabet_size
        model.index = index
        return model

    def prob_of(self, gram: str) -> float | None:
        return self.index.prob_of(gram)

    def count_of(self, gram: str) -> int:
        return self.index.count_of(gram)

    def positions_of(self, gram: str) -> list[int]:
        """Start positions of an n-gram (len <= k) inside the document."""
        result = self.index.match(gram)
        if not result.exact:
            return []
        return [pos for _, pos in result.occurrences]

    def ngram_counts(self, n: int) -> dict[str, int]:
        """Counts of every length-``n`` gram in the document (n <= k)."""
        if not 1 <= n <= self.k:
            raise InvalidArgumentError(f"window must be in 1..{self.k}, got {n}")
        counts: dict[str, int] = {}
        stack = [(self.index.root, "")]
        while stack:
            node, prefix = stack.pop()
            end_depth = node.depth0 + len(node.label)
            if end_depth >= n:
                counts[prefix + node.label[: n - node.depth0]] = node.count
                continue
            path = prefix + node.label
            stack.extend((child, path) for child in node.children.values())
        return counts


def build_document_models(corpus, k: int = suffixtree.DEFAULT_DEPTH) -> dict[str, DocumentModel]:
    alphabet_size = len(corpus.alphabet)
    return {
        doc_id: DocumentModel(doc_id, doc.text, k, alphabet_size)
        for doc_id, doc in sorted(corpus.documents.items())
    }


# ----------------------------------------------------------------------
# chain scoring


def smoothed_factor(source, gram: str) -> float:
    """Smoothed conditional probability for the last character of ``gram``.

    This one function owns the back-off reading: walk the full gram; on a
    miss multiply the accumulator by ``len/(len+2)`` for the failed level,
    drop the leftmost character, and repeat until a hit (contributing its
    interpolated probability) or the zero-order floor ``1/|V|``.
    """
    acc = 1.0
    t = gram
    while t:
        p = source.prob_of(t)
        if p is not None:
            return acc * p
        acc *= len(t) / (len(t) + 2)
        t = t[1:]
    return acc / source.alphabet_size


def backoff_prob(source, context: str, char: str) -> float:
    """Back-off value for ``char`` after ``context`` when the full n-gram is absent."""
    gram = context + char
    if source.prob_of(gram) is not None:
        raise InvalidArgumentError("back-off requires the full-order n-gram to be absent")
    return smoothed_factor(source, gram)


def _chain(source, query: str, max_order: int) -> float:
    if not query:
        raise InvalidArgumentError("query must be non-empty")
    total = 0.0
    for i in range(len(query)):
        gram = query[max(0, i - (max_order - 1)) : i + 1]
        total += math.log(smoothed_factor(source, gram))
    return total


def collection_prob(index: suffixtree.SuffixIndex, query: str) -> float:
    """Log probability of the query under the collection model."""
    return _chain(index, query, index.k)


def document_prob(doc_model: DocumentModel, query: str) -> float:
    """Log probability of the query under one document's model."""
    return _chain(doc_model, query, doc_model.k)


def score(
    doc_model: DocumentModel,
    index: suffixtree.SuffixIndex,
    params: ModelParams,
    query: str,
    whole_query: bool = False,
) -> QueryScore:
    """Jelinek-Mercer mixture score of ``query`` for one document.

    ``whole_query=True`` mixes the two full query probabilities instead of
    mixing per factor (kept for comparison; per-factor is the default
    because products of many factors underflow before mixing).
    """
    lam = params.jm_lambda
    if whole_query:
        log_d = document_prob(doc_model, query)
        log_c = collection_prob(index, query)
        if lam == 1.0:
            total = log_d
        elif lam == 0.0:
            total = log_c
        else:
            a, b = math.log(lam) + log_d, math.log(1.0 - lam) + log_c
            hi = max(a, b)
            total = hi + math.log(math.exp(a - hi) + math.exp(b - hi))
    elif lam == 1.0:
        total = document_prob(doc_model, query)
    elif lam == 0.0:
        total = collection_prob(index, query)
    else:
        total = 0.0
        n = params.max_order
        for i in range(len(query)):
            gram = query[max(0, i - (n - 1)) : i + 1]
            f = lam * smoothed_factor(doc_model, gram) + (1.0 - lam) * smoothed_factor(index, gram)
            total += math.log(f)
    matched = index.match(query).matched_len
    return QueryScore(doc_id=doc_model.doc_id, log_score=total, matched_len=matched)


# ----------------------------------------------------------------------
# document-model store


def save_document_models(models: dict[str, DocumentModel], path) -> None:
    payload = {
        "format": DOCMODELS_FORMAT,
        "version": DOCMODELS_VERSION,
        "models": {
            doc_id: {"length": m.length, "index": suffixtree.index_to_dict(m.index)}
            for doc_id, m in sorted(models.items())
        },
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def load_document_models(path) -> dict[str, DocumentModel]:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"corrupt document-model store: {exc.msg}", offset=exc.pos) from exc
    if not isinstance(data, dict) or data.get("format") != DOCMODELS_FORMAT:
        raise FormatError("not a document-model store")
    if data.get("version") != DOCMODELS_VERSION:
        raise VersionError(data.get("version"), DOCMODELS_VERSION)
    models = {}
    for doc_id, rec in data["models"].items():
        index = suffixtree.index_from_dict(rec["index"])
        models[doc_id] = DocumentModel._from_index(doc_id, index, rec["length"])
    return models
