import random

import pytest

from chargram import lm, search
from chargram import suffixtree as st
from chargram.errors import InvalidArgumentError
from helpers import id_of, make_corpus

BIBLE_TOY = {
    "butlers": "pharaoh was wroth and set the chief of the butlers over them",
    "bakers": "he spake unto the chief of the bakers in the prison",
    "cupbearers": "the chief of the cup-bearers stood near the king",
    "word": "in the beginning was the word",
}


@pytest.fixture(scope="module")
def engine_parts():
    corpus = make_corpus(BIBLE_TOY)
    index = st.build_index(corpus, k=15)
    models = lm.build_document_models(corpus, k=15)
    params = lm.ModelParams.for_index(index)
    return corpus, index, models, params


class TestScoreSnippet:
    def test_delta_equals_mu_collapses_exactly(self):
        for delta in range(1, 12):
            assert search.score_snippet(delta, delta) == float(delta)

    def test_spec_arithmetic(self):
        assert search.score_snippet(2, 5) == pytest.approx(2**0.9 * 5**0.1, abs=1e-12)
        assert search.score_snippet(2, 5) == pytest.approx(2.1919, abs=1e-3)

    def test_monotone_in_delta_for_equal_mu(self):
        rng = random.Random(5)
        for _ in range(100):
            full = rng.randint(2, 12)
            mu = rng.randint(full, 40)
            assert search.score_snippet(full, mu) > search.score_snippet(full - 1, mu)

    def test_preconditions(self):
        with pytest.raises(InvalidArgumentError):
            search.score_snippet(0, 1)
        with pytest.raises(InvalidArgumentError):
            search.score_snippet(3, 2)


class TestMatchedSegments:
    def test_full_query_present(self):
        matched, spans = search.matched_segments("say the word now", "the word")
        assert matched == 8
        assert any(s.segment == "the word" for s in spans)

    def test_partial_segments(self):
        matched, spans = search.matched_segments("the chief of the bakers", "chief of the butlers")
        assert matched == len("chief of the b")
        segments = {s.segment for s in spans}
        assert "chief of the b" in segments

    def test_spans_read_back_as_query_fragments(self):
        text = BIBLE_TOY["bakers"]
        query = "chief of the butlers"
        _, spans = search.matched_segments(text, query)
        for span in spans:
            fragment = text[span.start : span.end]
            assert fragment in query


class TestGenerateSnippets:
    def test_single_occurrence_yields_one_snippet(self):
        text = "x" * 200 + " needle in here " + "y" * 200
        spans = [search.MatchedSpan(text.index("needle"), 6, "needle")]
        snippets = search.generate_snippets(text, spans)
        assert len(snippets) == 1
        assert "needle" in snippets[0].text

    def test_top_three_cap(self):
        text = " ".join(["needle"] + ["pad" * 80, "needle", "pad" * 80, "needle", "pad" * 80, "needle", "pad" * 80, "needle"])
        spans = []
        start = 0
        while True:
            i = text.find("needle", start)
            if i < 0:
                break
            spans.append(search.MatchedSpan(i, 6, "needle"))
            start = i + 1
        assert len(spans) == 5
        snippets = search.generate_snippets(text, spans)
        assert len(snippets) == 3

    def test_window_bound_and_span_containment(self):
        rng = random.Random(11)
        words = ["alpha", "beta", "gamma", "delta", "need"]
        for _ in range(25):
            text = " ".join(rng.choice(words) for _ in range(rng.randint(10, 120)))
            _, spans = search.matched_segments(text, "need gamma")
            for snip in search.generate_snippets(text, spans):
                assert len(snip.text) <= search.SNIPPET_WIDTH
                for start, length in snip.highlight_spans:
                    assert snip.start <= start
                    assert start + length <= snip.start + len(snip.text)

    def test_top_snippet_matches_exhaustive_enumeration(self):
        rng = random.Random(23)
        words = ["lord", "lamb", "king", "pasture", "flock", "x"]
        for _ in range(40):
            text = " ".join(rng.choice(words) for _ in range(rng.randint(5, 90)))[:500]
            query = "lord lamb"
            _, spans = search.matched_segments(text, query)
            snippets = search.generate_snippets(text, spans)
            best = _exhaustive_best(text, spans, search.SNIPPET_WIDTH)
            if not snippets:
                assert best == 0.0
                continue
            assert snippets[0].score == pytest.approx(best, abs=1e-12)
            scores = [s.score for s in snippets]
            assert scores == sorted(scores, reverse=True)
            achievable = _all_scores(text, spans, search.SNIPPET_WIDTH)
            for s in scores:
                assert any(abs(s - a) < 1e-12 for a in achievable)


class TestSearch:
    def test_exact_matches_precede_partials(self, engine_parts):
        corpus, index, models, params = engine_parts
        results = search.search(corpus, index, models, params, "chief of the butlers")
        assert results[0].doc_id == id_of(corpus, "butlers")
        assert results[0].exact and results[0].matched_len == len("chief of the butlers")
        tail = {r.doc_id: r for r in results[1:]}
        assert id_of(corpus, "bakers") in tail
        assert id_of(corpus, "cupbearers") in tail
        assert not tail[id_of(corpus, "bakers")].exact
        assert tail[id_of(corpus, "bakers")].matched_len == len("chief of the b")
        lens = [r.matched_len for r in results]
        assert lens == sorted(lens, reverse=True)

    def test_unique_hit_is_first_and_exact(self, engine_parts):
        corpus, index, models, params = engine_parts
        results = search.search(corpus, index, models, params, "beginning")
        assert results[0].doc_id == id_of(corpus, "word")
        assert results[0].exact

    def test_limit_one(self, engine_parts):
        corpus, index, models, params = engine_parts
        results = search.search(corpus, index, models, params, "the chief", limit=1)
        assert len(results) == 1

    def test_no_candidates_yields_empty_list(self, engine_parts):
        corpus, index, models, params = engine_parts
        assert search.search(corpus, index, models, params, "qqq") == []

    def test_deterministic(self, engine_parts):
        corpus, index, models, params = engine_parts
        first = search.search(corpus, index, models, params, "the chief of the")
        second = search.search(corpus, index, models, params, "the chief of the")
        assert first == second

    def test_snippets_attached_and_highlighted(self, engine_parts):
        corpus, index, models, params = engine_parts
        results = search.search(corpus, index, models, params, "beginning")
        snips = results[0].snippets
        assert snips and "beginning" in snips[0].text
        doc = corpus.get_document(results[0].doc_id)
        for start, length in snips[0].highlight_spans:
            assert doc.text[start : start + length] in "beginning"


def _windows(text, w):
    if len(text) <= w:
        return [(0, len(text))]
    return [(left, left + w) for left in range(0, len(text) - w + 1)]


def _all_scores(text, spans, w):
    scores = set()
    for left, right in _windows(text, w):
        inside = [s for s in spans if s.start >= left and s.end <= right]
        if inside:
            scores.add(search.score_snippet(len({s.segment for s in inside}), len(inside)))
    return scores


def _exhaustive_best(text, spans, w):
    return max(_all_scores(text, spans, w), default=0.0)
