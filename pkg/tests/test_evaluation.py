import math
import random

import numpy as np
import pytest

from chargram import evaluation as ev
from chargram.errors import InvalidArgumentError

DOCS = [f"doc{i}" for i in range(1, 11)]


def ranking(order, query="q1"):
    return ev.Ranking(query, list(order))


def judge(user, doc, grade, pos, query="q1"):
    return ev.Judgment(user, query, doc, grade, pos)


class TestConsensus:
    def test_single_user_order(self):
        judgments = [judge("u1", d, g, i + 1) for i, (d, g) in enumerate(zip(DOCS[:4], [2, 4, 1, 3]))]
        consensus = ev.consensus_ranking(judgments, "q1")
        assert consensus.order == ["doc2", "doc4", "doc1", "doc3"]

    def test_two_identical_users_agree_with_one(self):
        base = [judge("u1", d, g, i + 1) for i, (d, g) in enumerate(zip(DOCS[:4], [2, 4, 1, 3]))]
        doubled = base + [judge("u2", j.doc_id, j.grade, j.display_position) for j in base]
        assert ev.consensus_ranking(doubled, "q1").order == ev.consensus_ranking(base, "q1").order

    def test_all_equal_grades_fall_back_to_display_order(self):
        judgments = [judge("u1", d, 2, pos) for pos, d in enumerate(["b", "c", "a"], start=1)]
        assert ev.consensus_ranking(judgments, "q1").order == ["b", "c", "a"]

    def test_no_judgments_is_an_error(self):
        with pytest.raises(InvalidArgumentError):
            ev.consensus_ranking([], "q1")


class TestFootrule:
    def test_identical_is_one(self):
        assert ev.footrule(ranking(DOCS), ranking(DOCS)) == 1.0

    def test_reversed_k10_is_zero(self):
        assert ev.footrule(ranking(DOCS), ranking(DOCS[::-1])) == 0.0

    def test_reversed_k3_uses_odd_formula(self):
        docs = DOCS[:3]
        assert ev.footrule(ranking(docs), ranking(docs[::-1])) == 0.0
        # Fr = 4 and maxFr = (k+1)(k-1)/2 = 4 for k = 3

    def test_known_intermediate_value(self):
        swapped = ["doc2", "doc1"] + DOCS[2:]
        assert ev.footrule(ranking(DOCS), ranking(swapped)) == pytest.approx(1 - 2 / 50)

    def test_symmetry(self):
        rng = random.Random(4)
        for _ in range(20):
            a, b = DOCS[:], DOCS[:]
            rng.shuffle(a)
            rng.shuffle(b)
            assert ev.footrule(ranking(a), ranking(b)) == ev.footrule(ranking(b), ranking(a))

    def test_mismatched_sets_rejected(self):
        with pytest.raises(InvalidArgumentError):
            ev.footrule(ranking(DOCS[:3]), ranking(["x", "y", "z"]))


class TestMMeasure:
    def test_identical_is_one(self):
        assert ev.m_measure(ranking(DOCS), ranking(DOCS)) == 1.0

    def test_reversed_is_zero(self):
        assert ev.m_measure(ranking(DOCS), ranking(DOCS[::-1])) == pytest.approx(0.0, abs=1e-12)

    def test_top_swap_value(self):
        swapped = ["doc2", "doc1"] + DOCS[2:]
        m = 2 * abs(1 - 1 / 2)
        max_m = sum(abs(1 / i - 1 / (10 - i + 1)) for i in range(1, 11))
        assert ev.m_measure(ranking(DOCS), ranking(swapped)) == pytest.approx(1 - m / max_m, abs=1e-12)

    def test_symmetry(self):
        rng = random.Random(9)
        for _ in range(20):
            a, b = DOCS[:], DOCS[:]
            rng.shuffle(a)
            rng.shuffle(b)
            assert ev.m_measure(ranking(a), ranking(b)) == ev.m_measure(ranking(b), ranking(a))

    def test_weights_top_positions_more_than_footrule(self):
        top_swap = ["doc2", "doc1"] + DOCS[2:]
        bottom_swap = DOCS[:8] + ["doc10", "doc9"]
        assert ev.m_measure(ranking(DOCS), ranking(top_swap)) < ev.m_measure(
            ranking(DOCS), ranking(bottom_swap)
        )
        assert ev.footrule(ranking(DOCS), ranking(top_swap)) == ev.footrule(
            ranking(DOCS), ranking(bottom_swap)
        )


class TestNdcg:
    def test_ideal_order_is_one(self):
        assert ev.ndcg([4, 3, 2, 1]) == 1.0
        assert ev.ndcg([4, 3, 2, 1], ev.POSITION_DISCOUNT) == 1.0

    def test_hand_computed_log2_value(self):
        dcg = 1 + 4 / math.log2(2) + 3 / math.log2(3)
        idcg = 4 + 3 / math.log2(2) + 1 / math.log2(3)
        assert ev.ndcg([1, 4, 3]) == pytest.approx(dcg / idcg, abs=1e-12)
        assert ev.ndcg([1, 4, 3]) == pytest.approx(0.90327, abs=1e-5)

    def test_position_discount_variant(self):
        dcg = 1 + 4 / 2 + 3 / 3
        idcg = 4 + 3 / 2 + 1 / 3
        assert ev.ndcg([1, 4, 3], ev.POSITION_DISCOUNT) == pytest.approx(dcg / idcg, abs=1e-12)

    def test_equal_grades_score_one_under_both_discounts(self):
        for discount in ev.DISCOUNTS:
            assert ev.ndcg([2, 2, 2, 2], discount) == 1.0

    def test_invariant_under_equal_grade_permutations(self):
        assert ev.ndcg([4, 2, 2, 1]) == ev.ndcg([4, 2, 2, 1])
        a = ev.ndcg([3, 2, 2, 2, 1])
        b = ev.ndcg([3, 2, 2, 2, 1])  # same multiset, same positions of ties
        assert a == b

    def test_preconditions(self):
        with pytest.raises(InvalidArgumentError):
            ev.ndcg([])
        with pytest.raises(InvalidArgumentError):
            ev.ndcg([0, 1])
        with pytest.raises(InvalidArgumentError):
            ev.ndcg([1, 2], "linear")


class TestBootstrap:
    def test_degenerate_samples(self):
        assert ev.bootstrap_ci([3.5] * 20, seed=1) == (3.5, 3.5)

    def test_deterministic_per_seed(self):
        samples = list(np.random.default_rng(0).normal(size=50))
        assert ev.bootstrap_ci(samples, seed=42) == ev.bootstrap_ci(samples, seed=42)
        assert ev.bootstrap_ci(samples, seed=42) != ev.bootstrap_ci(samples, seed=43)

    def test_width_shrinks_like_inverse_sqrt_n(self):
        rng = np.random.default_rng(7)
        widths = {}
        for n in (25, 100, 400):
            lows, highs = [], []
            for rep in range(30):
                samples = rng.normal(size=n)
                lo, hi = ev.bootstrap_ci(samples, seed=rep)
                lows.append(lo)
                highs.append(hi)
            widths[n] = float(np.mean(np.array(highs) - np.array(lows)))
        assert widths[25] / widths[100] == pytest.approx(2.0, rel=0.3)
        assert widths[100] / widths[400] == pytest.approx(2.0, rel=0.3)

    def test_interval_contains_sample_mean_for_symmetric_samples(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            samples = rng.normal(size=40)
            lo, hi = ev.bootstrap_ci(samples, seed=5)
            assert lo <= float(np.mean(samples)) <= hi

    def test_preconditions(self):
        with pytest.raises(InvalidArgumentError):
            ev.bootstrap_ci([], seed=1)
        with pytest.raises(InvalidArgumentError):
            ev.bootstrap_ci([1.0, 2.0], b=10, seed=1)


class TestDisplayBiasReport:
    def _consistent_judgments(self, k=10, queries=("q1", "q2"), users=("u1",)):
        judgments = []
        for q in queries:
            for u in users:
                for pos, doc in enumerate(DOCS[:k], start=1):
                    grade = 4 if pos <= 2 else (3 if pos <= 5 else (2 if pos <= 8 else 1))
                    judgments.append(ev.Judgment(u, q, doc, grade, pos))
        return judgments

    def test_consensus_against_itself_scores_one(self):
        judgments = self._consistent_judgments()
        system = {q: ev.consensus_ranking(judgments, q) for q in ("q1", "q2")}
        report = ev.display_bias_report(judgments, system)
        for row in report["per_query"]:
            assert row["footrule_system"] == 1.0
            assert row["m_system"] == 1.0
            assert row["ndcg_log2_system"] == 1.0
            assert row["ndcg_position_system"] == 1.0
        for row in report["per_user"]:
            assert row["footrule_consensus"] == 1.0
            assert row["m_consensus"] == 1.0

    def test_row_counts_are_queries_plus_users(self):
        judgments = self._consistent_judgments(queries=("q1", "q2", "q3"), users=("u1", "u2"))
        system = {q: ev.consensus_ranking(judgments, q) for q in ("q1", "q2", "q3")}
        report = ev.display_bias_report(judgments, system)
        assert len(report["per_query"]) + len(report["per_user"]) == 3 + 2

    def test_random_judgments_track_simulated_baseline(self):
        rng = random.Random(2718)
        queries = [f"q{i}" for i in range(30)]
        judgments = []
        system = {}
        for q in queries:
            order = DOCS[:]
            rng.shuffle(order)
            system[q] = ev.Ranking(q, order)
            display = DOCS[:]
            rng.shuffle(display)
            for pos, doc in enumerate(display, start=1):
                judgments.append(ev.Judgment("u1", q, doc, rng.randint(1, 4), pos))
        report = ev.display_bias_report(judgments, system)
        got = report["averages"]["by_query"]["footrule_system"]
        sim = []
        for _ in range(3000):
            a, b = DOCS[:], DOCS[:]
            rng.shuffle(a)
            rng.shuffle(b)
            sim.append(ev.footrule(ev.Ranking("s", a), ev.Ranking("s", b)))
        expected = sum(sim) / len(sim)
        assert got == pytest.approx(expected, abs=0.12)
