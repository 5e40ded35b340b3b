"""Straight-line reference implementations used as test oracles.

Everything here works from brute-force substring counts and direct formula
evaluation; nothing touches the suffix tree, its incremental recurrences,
or any other production code path.
"""

from __future__ import annotations

import math
from fractions import Fraction


# ----------------------------------------------------------------------
# brute-force counting


def count_overlapping(text: str, gram: str) -> int:
    n, count, start = len(gram), 0, 0
    while True:
        i = text.find(gram, start)
        if i < 0:
            return count
        count += 1
        start = i + 1


def all_ngram_counts(texts: dict[str, str], max_len: int) -> dict[str, int]:
    counts: dict[str, int] = {}
    for text in texts.values():
        for i in range(len(text)):
            for j in range(i + 1, min(i + max_len, len(text)) + 1):
                gram = text[i:j]
                counts[gram] = counts.get(gram, 0) + 1
    return counts


def all_ngram_occurrences(texts: dict[str, str], max_len: int) -> dict[str, list[tuple[str, int]]]:
    """Every n-gram (length <= max_len) mapped to all its (doc, pos) occurrences."""
    occurrences: dict[str, list[tuple[str, int]]] = {}
    for doc_id in sorted(texts):
        text = texts[doc_id]
        for i in range(len(text)):
            for j in range(i + 1, min(i + max_len, len(text)) + 1):
                occurrences.setdefault(text[i:j], []).append((doc_id, i))
    return occurrences


def all_occurrences(texts: dict[str, str], gram: str) -> list[tuple[str, int]]:
    out = []
    for doc_id, text in texts.items():
        start = 0
        while True:
            i = text.find(gram, start)
            if i < 0:
                break
            out.append((doc_id, i))
            start = i + 1
    return out


def total_unigrams(texts: dict[str, str]) -> int:
    return sum(len(t) for t in texts.values())


def alphabet(texts: dict[str, str]) -> set[str]:
    return {c for t in texts.values() for c in t}


# ----------------------------------------------------------------------
# order interpolation, back-off, chain scoring


def lambda_weights(n: int) -> list[Fraction]:
    denom = Fraction((n + 1) * (n + 2), 2)
    return [Fraction(n + 2 - k) / denom for k in range(1, n + 2)]


def interp_prob(counts: dict[str, int], total1: int, vocab: int, gram: str) -> float:
    """Direct evaluation of the order-interpolation sum for an occurring gram."""
    d = len(gram)
    weights = lambda_weights(d)
    value = 0.0
    for k, w in enumerate(weights, start=1):
        length = d - k + 1  # suffix length for this interpolation term
        if length == 0:
            value += float(w) / vocab
            continue
        suffix = gram[d - length :]
        context = suffix[:-1]
        ctx_count = counts[context] if context else total1
        value += float(w) * counts[suffix] / ctx_count
    return value


def smoothed_factor(counts, total1, vocab, gram) -> float:
    acc = 1.0
    t = gram
    while t:
        if counts.get(t, 0) > 0:
            return acc * interp_prob(counts, total1, vocab, t)
        acc *= len(t) / (len(t) + 2)
        t = t[1:]
    return acc / vocab


def chain_log_prob(counts, total1, vocab, query: str, k: int) -> float:
    total = 0.0
    for i in range(len(query)):
        gram = query[max(0, i - (k - 1)) : i + 1]
        total += math.log(smoothed_factor(counts, total1, vocab, gram))
    return total


def jm_log_score(doc_counts, doc_total1, coll_counts, coll_total1, vocab, query, k, lam) -> float:
    total = 0.0
    for i in range(len(query)):
        gram = query[max(0, i - (k - 1)) : i + 1]
        f_d = smoothed_factor(doc_counts, doc_total1, vocab, gram)
        f_c = smoothed_factor(coll_counts, coll_total1, vocab, gram)
        total += math.log(lam * f_d + (1.0 - lam) * f_c)
    return total


# ----------------------------------------------------------------------
# edit distance and exact common substrings


def levenshtein(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[len(b)]


def maximal_common_substrings(a: str, b: str, min_len: int = 3) -> set[tuple[int, int, int]]:
    """All (pos_a, pos_b, length) exact matches not extendable either way."""
    out = set()
    for i in range(len(a)):
        for j in range(len(b)):
            if a[i] != b[j] or (i > 0 and j > 0 and a[i - 1] == b[j - 1]):
                continue
            length = 0
            while i + length < len(a) and j + length < len(b) and a[i + length] == b[j + length]:
                length += 1
            if length >= min_len:
                out.add((i, j, length))
    return out


# ----------------------------------------------------------------------
# ranking-evaluation arithmetic


def footrule_value(pos1: dict, pos2: dict) -> float:
    k = len(pos1)
    fr = sum(abs(pos1[d] - pos2[d]) for d in pos1)
    max_fr = k * k / 2 if k % 2 == 0 else (k + 1) * (k - 1) / 2
    return 1.0 - fr / max_fr


def m_measure_value(pos1: dict, pos2: dict) -> float:
    k = len(pos1)
    m = sum(abs(1.0 / pos1[d] - 1.0 / pos2[d]) for d in pos1)
    max_m = sum(abs(1.0 / i - 1.0 / (k - i + 1)) for i in range(1, k + 1))
    return 1.0 - m / max_m
