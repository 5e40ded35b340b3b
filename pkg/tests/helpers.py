"""Small builders shared by the test modules."""

from __future__ import annotations

import random

from chargram.corpus import Corpus, Document, doc_id_for_path


def make_corpus(texts: dict[str, str]) -> Corpus:
    """Corpus from ``{"name_or_nested/path": text}`` with stable ids."""
    docs = {}
    for name, text in sorted(texts.items()):
        path = tuple(name.split("/"))
        doc_id = doc_id_for_path(path)
        docs[doc_id] = Document(doc_id, path, path[-1], text, {})
    return Corpus(docs)


def id_of(corpus: Corpus, name: str) -> str:
    return doc_id_for_path(tuple(name.split("/")))


FIG3_TEXTS = {
    "beginning": "beginning",
    "bigynnyng": "bigynnyng",
    "begynnynge": "begynnynge",
}


def random_texts(rng: random.Random, max_docs=5, max_len=200, max_alpha=6, min_len=1) -> dict[str, str]:
    sigma = "abcdef"[: rng.randint(2, max_alpha)]
    n_docs = rng.randint(1, max_docs)
    return {
        f"d{i}": "".join(rng.choice(sigma) for _ in range(rng.randint(min_len, max_len)))
        for i in range(n_docs)
    }
