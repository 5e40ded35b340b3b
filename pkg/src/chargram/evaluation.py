"""Graded-relevance ranking evaluation toolkit.

Implements consensus ranking from graded judgments, two rank-correlation
measures over equal document sets (normalized Spearman footrule and the
reciprocal-rank weighted M-measure), NDCG under two discount functions,
and percentile bootstrap confidence intervals. All measures are 1 for
identical rankings; footrule and M are 0 on exact reversal.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError

LOG2_DISCOUNT = "log2"
POSITION_DISCOUNT = "position"
DISCOUNTS = (LOG2_DISCOUNT, POSITION_DISCOUNT)

GRADE_MIN = 1
GRADE_MAX = 4


@dataclass
class Judgment:
    user_id: str
    query_id: str
    doc_id: str
    grade: int
    display_position: int

    def __post_init__(self):
        if not GRADE_MIN <= self.grade <= GRADE_MAX:
            raise InvalidArgumentError(f"grade must be in {GRADE_MIN}..{GRADE_MAX}, got {self.grade}")
        if self.display_position < 1:
            raise InvalidArgumentError("display_position must be >= 1")


@dataclass
class Ranking:
    query_id: str
    order: list[str]  # doc_id at positions 1..k

    def __post_init__(self):
        if len(set(self.order)) != len(self.order):
            raise InvalidArgumentError("ranking order must be a permutation of distinct doc ids")

    def positions(self) -> dict[str, int]:
        return {doc: i + 1 for i, doc in enumerate(self.order)}


def consensus_ranking(judgments: list[Judgment], query_id: str) -> Ranking:
    """Documents ordered by summed grade; ties by mean display position, then id."""
    relevant = [j for j in judgments if j.query_id == query_id]
    if not relevant:
        raise InvalidArgumentError(f"no judgments for query {query_id!r}")
    grades: dict[str, int] = {}
    positions: dict[str, list[int]] = {}
    for j in relevant:
        grades[j.doc_id] = grades.get(j.doc_id, 0) + j.grade
        positions.setdefault(j.doc_id, []).append(j.display_position)
    order = sorted(
        grades,
        key=lambda d: (-grades[d], sum(positions[d]) / len(positions[d]), d),
    )
    return Ranking(query_id, order)


def _common_positions(r1: Ranking, r2: Ranking) -> tuple[dict[str, int], dict[str, int]]:
    p1, p2 = r1.positions(), r2.positions()
    if set(p1) != set(p2):
        raise InvalidArgumentError("rankings must cover the same document set")
    return p1, p2


def footrule(r1: Ranking, r2: Ranking) -> float:
    """Normalized Spearman footrule similarity in [0, 1]."""
    p1, p2 = _common_positions(r1, r2)
    k = len(p1)
    fr = sum(abs(p1[d] - p2[d]) for d in sorted(p1))
    max_fr = k * k / 2.0 if k % 2 == 0 else (k + 1) * (k - 1) / 2.0
    return 1.0 - fr / max_fr


def m_measure(r1: Ranking, r2: Ranking) -> float:
    """Top-weighted rank agreement via reciprocal positions, in [0, 1]."""
    p1, p2 = _common_positions(r1, r2)
    k = len(p1)
    # summed in sorted doc order so the result is exactly symmetric
    m = sum(abs(1.0 / p1[d] - 1.0 / p2[d]) for d in sorted(p1))
    max_m = sum(abs(1.0 / i - 1.0 / (k - i + 1)) for i in range(1, k + 1))
    return 1.0 - m / max_m


def ndcg(grades_in_rank_order: list[int], discount: str = LOG2_DISCOUNT) -> float:
    """Normalized discounted cumulative gain for graded results.

    Rank 1 is never discounted; later ranks divide by ``log2(i)`` or by the
    position ``i`` itself, the latter modelling a less persistent reader.
    """
    if not grades_in_rank_order:
        raise InvalidArgumentError("grades must be non-empty")
    if discount not in DISCOUNTS:
        raise InvalidArgumentError(f"discount must be one of {DISCOUNTS}, got {discount!r}")
    if any(g < 1 for g in grades_in_rank_order):
        raise InvalidArgumentError("grades must be >= 1")

    def dcg(grades: list[int]) -> float:
        total = float(grades[0])
        for i, g in enumerate(grades[1:], start=2):
            total += g / (math.log2(i) if discount == LOG2_DISCOUNT else i)
        return total

    return dcg(grades_in_rank_order) / dcg(sorted(grades_in_rank_order, reverse=True))


def bootstrap_ci(
    samples, b: int = 1000, alpha: float = 0.05, seed: int = 0
) -> tuple[float, float]:
    """Percentile bootstrap interval for the mean, deterministic per seed.

    Draws ``b`` resamples with replacement, takes each mean, sorts, and
    returns the nearest-rank values at the alpha/2 and 1 - alpha/2
    percentiles.
    """
    samples = np.asarray(list(samples), dtype=np.float64)
    if samples.size == 0:
        raise InvalidArgumentError("samples must be non-empty")
    if b < 100:
        raise InvalidArgumentError("bootstrap needs at least 100 resamples")
    if not 0.0 < alpha < 1.0:
        raise InvalidArgumentError("alpha must be in (0, 1)")
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, samples.size, size=(b, samples.size))
    means = np.sort(samples[idx].mean(axis=1))
    lower = means[max(0, math.ceil(alpha / 2.0 * b) - 1)]
    upper = means[max(0, math.ceil((1.0 - alpha / 2.0) * b) - 1)]
    return float(lower), float(upper)


# ----------------------------------------------------------------------
# presentation-bias report


def user_ranking(judgments: list[Judgment], user_id: str, query_id: str) -> Ranking:
    """One user's own ordering: grade desc, display position asc, doc id."""
    own = [j for j in judgments if j.user_id == user_id and j.query_id == query_id]
    if not own:
        raise InvalidArgumentError(f"no judgments for user {user_id!r} on query {query_id!r}")
    own.sort(key=lambda j: (-j.grade, j.display_position, j.doc_id))
    return Ranking(query_id, [j.doc_id for j in own])


def display_ranking(judgments: list[Judgment], query_id: str) -> Ranking:
    relevant = [j for j in judgments if j.query_id == query_id]
    if not relevant:
        raise InvalidArgumentError(f"no judgments for query {query_id!r}")
    positions: dict[str, list[int]] = {}
    for j in relevant:
        positions.setdefault(j.doc_id, []).append(j.display_position)
    order = sorted(positions, key=lambda d: (sum(positions[d]) / len(positions[d]), d))
    return Ranking(query_id, order)


def display_bias_report(
    judgments: list[Judgment],
    system_rankings: dict[str, Ranking],
    display_rankings: dict[str, Ranking] | None = None,
) -> dict:
    """Correlation and NDCG tables for system and display orderings.

    Produces one row per query (consensus vs. system and vs. display) and
    one row per user (agreement with the consensus plus NDCG averages),
    with overall averages.
    """
    queries = sorted({j.query_id for j in judgments})
    users = sorted({j.user_id for j in judgments})
    if display_rankings is None:
        display_rankings = {q: display_ranking(judgments, q) for q in queries}

    per_query = []
    for q in queries:
        consensus = consensus_ranking(judgments, q)
        system = system_rankings[q]
        display = display_rankings[q]
        row = {
            "query_id": q,
            "footrule_system": footrule(system, consensus),
            "m_system": m_measure(system, consensus),
            "footrule_display": footrule(display, consensus),
            "m_display": m_measure(display, consensus),
        }
        for name, ranking in (("system", system), ("display", display)):
            for disc in DISCOUNTS:
                values = [
                    ndcg(_grades_in_order(judgments, u, q, ranking), disc)
                    for u in users
                    if _has_judgments(judgments, u, q)
                ]
                row[f"ndcg_{disc}_{name}"] = sum(values) / len(values)
        per_query.append(row)

    per_user = []
    for u in users:
        judged = [q for q in queries if _has_judgments(judgments, u, q)]
        foot, m_vals, ndcg_rows = [], [], {f"ndcg_{d}_{n}": [] for d in DISCOUNTS for n in ("system", "display")}
        for q in judged:
            consensus = consensus_ranking(judgments, q)
            own = user_ranking(judgments, u, q)
            foot.append(footrule(own, consensus))
            m_vals.append(m_measure(own, consensus))
            for name, ranking in (("system", system_rankings[q]), ("display", display_rankings[q])):
                for disc in DISCOUNTS:
                    ndcg_rows[f"ndcg_{disc}_{name}"].append(
                        ndcg(_grades_in_order(judgments, u, q, ranking), disc)
                    )
        row = {
            "user_id": u,
            "footrule_consensus": sum(foot) / len(foot),
            "m_consensus": sum(m_vals) / len(m_vals),
        }
        row.update({key: sum(vals) / len(vals) for key, vals in ndcg_rows.items()})
        per_user.append(row)

    def _avg(rows, key):
        return sum(r[key] for r in rows) / len(rows)

    averages = {
        "by_query": {key: _avg(per_query, key) for key in per_query[0] if key != "query_id"},
        "by_user": {key: _avg(per_user, key) for key in per_user[0] if key != "user_id"},
    }
    return {"per_query": per_query, "per_user": per_user, "averages": averages}


def _has_judgments(judgments, user_id, query_id) -> bool:
    return any(j.user_id == user_id and j.query_id == query_id for j in judgments)


def _grades_in_order(judgments, user_id, query_id, ranking: Ranking) -> list[int]:
    grades = {j.doc_id: j.grade for j in judgments if j.user_id == user_id and j.query_id == query_id}
    return [grades[d] for d in ranking.order if d in grades]


# ----------------------------------------------------------------------
# CSV ingestion


def read_judgments_csv(path) -> list[Judgment]:
    """Read ``user,query,doc,grade,display_pos`` rows (header required)."""
    judgments = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            judgments.append(
                Judgment(
                    user_id=row["user"],
                    query_id=row["query"],
                    doc_id=row["doc"],
                    grade=int(row["grade"]),
                    display_position=int(row["display_pos"]),
                )
            )
    return judgments


def read_rankings_csv(path) -> dict[str, Ranking]:
    """Read ``query,position,doc`` rows (header required) into rankings."""
    rows: dict[str, list[tuple[int, str]]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            rows.setdefault(row["query"], []).append((int(row["position"]), row["doc"]))
    return {
        q: Ranking(q, [doc for _, doc in sorted(entries)]) for q, entries in sorted(rows.items())
    }
