"""Influencer-retrieval scoring against a curated ground truth.

Given per-domain top-Q rankings from one or more methods and a labeled
influencer set, computes precision, recall, F-score, and nDCG per domain
plus cross-domain averages.

Metric fine print: the precision here divides the retrieved-and-relevant
count by the size of the influencer set, and the default recall does the
same, so the two coincide by construction. A strict mode is exposed that
instead divides recall by the retrieved count; both are recorded in the
report so consumers know which convention produced the numbers.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import InputError

RECALL_MODES = ("default", "strict")


@dataclass(frozen=True)
class GroundTruth:
    """Per-domain influencer sets with optional 0-3 relevance grades.

    When grades are present, users graded >= 1 form the influencer set and
    grade-0 entries are known non-influencers kept for nDCG coverage.
    """

    influencers: Mapping[str, frozenset[str]]
    grades: Mapping[str, Mapping[str, int]]

    def __post_init__(self) -> None:
        for domain, graded in self.grades.items():
            bad = sorted(u for u, g in graded.items() if g not in (0, 1, 2, 3))
            if bad:
                raise InputError(f"domain {domain!r}: grades must be 0..3; bad users: {bad[:5]}")

    @property
    def domains(self) -> list[str]:
        return sorted(self.influencers)

    def influencer_set(self, domain: str) -> frozenset[str]:
        if domain not in self.influencers:
            raise InputError(f"ground truth has no domain {domain!r}")
        return self.influencers[domain]

    def grades_for(self, domain: str) -> Mapping[str, int]:
        return self.grades.get(domain, {})

    @classmethod
    def load(cls, path: str | Path) -> "GroundTruth":
        """JSON file: {domain: [{"user_id": ..., "grade": 0..3}, ...]}.

        The grade key is optional; ungraded entries count as influencers.
        """
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise InputError(f"{path}: ground truth must be a JSON object keyed by domain")
        influencers: dict[str, frozenset[str]] = {}
        grades: dict[str, dict[str, int]] = {}
        for domain, entries in raw.items():
            members: set[str] = set()
            graded: dict[str, int] = {}
            for entry in entries:
                if isinstance(entry, str):
                    members.add(entry)
                    continue
                user = entry.get("user_id")
                if not user:
                    raise InputError(f"{path}: domain {domain!r}: entry without user_id")
                grade = entry.get("grade")
                if grade is None:
                    members.add(user)
                else:
                    graded[user] = int(grade)
                    if int(grade) >= 1:
                        members.add(user)
            influencers[domain] = frozenset(members)
            if graded:
                grades[domain] = graded
        return cls(influencers=influencers, grades=grades)


@dataclass(frozen=True)
class MethodRanking:
    """One method's per-domain ordered user lists (top-Q prefixes used)."""

    method: str
    rankings: Mapping[str, Sequence[str]]

    def __post_init__(self) -> None:
        for domain, users in self.rankings.items():
            if len(set(users)) != len(list(users)):
                raise InputError(
                    f"method {self.method!r}, domain {domain!r}: duplicate users in ranking"
                )

    def top(self, domain: str, q: int) -> list[str]:
        if domain not in self.rankings:
            raise InputError(f"method {self.method!r} has no ranking for domain {domain!r}")
        return list(self.rankings[domain][:q])


def load_method_rankings(path: str | Path) -> list[MethodRanking]:
    """CSV with header method,domain,rank,user_id; ranks order each list."""
    rows: dict[str, dict[str, list[tuple[int, str]]]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        for row_no, row in enumerate(reader, start=1):
            if not row:
                continue
            if row_no == 1 and row[0].strip().lower() == "method":
                continue
            if len(row) < 4:
                raise InputError(f"{path}: line {row_no}: expected method,domain,rank,user_id")
            method, domain, rank_raw, user = (c.strip() for c in row[:4])
            try:
                rank = int(rank_raw)
            except ValueError:
                raise InputError(f"{path}: line {row_no}: rank must be an integer")
            rows.setdefault(method, {}).setdefault(domain, []).append((rank, user))
    out = []
    for method in sorted(rows):
        rankings = {
            domain: [user for _, user in sorted(pairs)]
            for domain, pairs in sorted(rows[method].items())
        }
        out.append(MethodRanking(method=method, rankings=rankings))
    if not out:
        raise InputError(f"{path}: no rankings found")
    return out


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------

def precision1(influencers: Iterable[str], retrieved_top_q: Sequence[str]) -> float:
    """Retrieved influencers over the influencer-set size."""
    hc = set(influencers)
    if not hc:
        raise InputError("influencer set is empty")
    return len(hc & set(retrieved_top_q)) / len(hc)


def recall(
    influencers: Iterable[str], retrieved_top_q: Sequence[str], mode: str = "default"
) -> float:
    """Retrieved influencers over the influencer set (default) or over the
    retrieved list size (strict)."""
    if mode not in RECALL_MODES:
        raise InputError(f"unknown recall mode {mode!r}; known: {RECALL_MODES}")
    hc = set(influencers)
    if not hc:
        raise InputError("influencer set is empty")
    hits = len(hc & set(retrieved_top_q))
    if mode == "default":
        return hits / len(hc)
    if not retrieved_top_q:
        raise InputError("strict recall needs a non-empty retrieved list")
    return hits / len(retrieved_top_q)


def f_score(p: float, r: float) -> float:
    """Harmonic mean of precision and recall; 0 when both are 0."""
    if p + r == 0:
        return 0.0
    return 2 * p * r / (p + r)


def dcg(grades_in_rank_order: Sequence[int]) -> float:
    """Sum of (2^grade - 1) / log2(position + 1) over the ranked grades."""
    return sum(
        (2 ** g - 1) / math.log2(i + 1)
        for i, g in enumerate(grades_in_rank_order, start=1)
    )


def ndcg(retrieved_top_q: Sequence[str], grades: Mapping[str, int]) -> float:
    """DCG of the ranking over the ideal DCG of the same grade multiset.

    Every retrieved user must be graded. The ideal pool is the retrieved
    set itself sorted by descending grade, which makes cross-method
    comparisons at equal Q apples-to-apples. All-zero grades give 0.
    """
    ranked_grades = []
    for user in retrieved_top_q:
        if user not in grades:
            raise InputError(f"retrieved user {user!r} has no relevance grade")
        ranked_grades.append(grades[user])
    if not ranked_grades:
        return 0.0
    ideal = dcg(sorted(ranked_grades, reverse=True))
    if ideal == 0:
        return 0.0
    return dcg(ranked_grades) / ideal


# ---------------------------------------------------------------------------
# Benchmark report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MetricRow:
    method: str
    domain: str          # a real domain or "average"
    precision1: float
    recall: float
    f_score: float
    ndcg: float


@dataclass(frozen=True)
class BenchmarkReport:
    rows: tuple[MetricRow, ...]
    q: int
    recall_mode: str

    def row(self, method: str, domain: str) -> MetricRow:
        for r in self.rows:
            if r.method == method and r.domain == domain:
                return r
        raise InputError(f"no row for method {method!r}, domain {domain!r}")

    def to_csv_rows(self) -> list[list[str]]:
        out = [["method", "domain", "precision1", "recall", "f_score", "ndcg", "recall_mode", "q"]]
        for r in self.rows:
            out.append([
                r.method, r.domain,
                f"{r.precision1:.6f}", f"{r.recall:.6f}",
                f"{r.f_score:.6f}", f"{r.ndcg:.6f}",
                self.recall_mode, str(self.q),
            ])
        return out

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "recall_mode": self.recall_mode,
            "rows": [
                {
                    "method": r.method, "domain": r.domain,
                    "precision1": r.precision1, "recall": r.recall,
                    "f_score": r.f_score, "ndcg": r.ndcg,
                }
                for r in self.rows
            ],
        }


def run_benchmark(
    methods: Sequence[MethodRanking],
    truth: GroundTruth,
    q: int = 150,
    recall_mode: str = "default",
) -> BenchmarkReport:
    """Score every method on every ground-truth domain and average per method.

    nDCG is computed only where the domain has grades covering the
    retrieved users; a missing grade is an error naming the user, a domain
    without any grades scores nDCG as 0.
    """
    if q < 1:
        raise InputError(f"q must be >= 1, got {q}")
    rows: list[MetricRow] = []
    for method in methods:
        per_domain: list[MetricRow] = []
        for domain in truth.domains:
            top = method.top(domain, q)  # raises naming method and domain if absent
            hc = truth.influencer_set(domain)
            p = precision1(hc, top)
            r = recall(hc, top, recall_mode)
            grades = truth.grades_for(domain)
            n = ndcg(top, grades) if grades else 0.0
            per_domain.append(MetricRow(
                method=method.method, domain=domain,
                precision1=p, recall=r, f_score=f_score(p, r), ndcg=n,
            ))
        rows.extend(per_domain)
        count = len(per_domain)
        rows.append(MetricRow(
            method=method.method, domain="average",
            precision1=sum(r.precision1 for r in per_domain) / count,
            recall=sum(r.recall for r in per_domain) / count,
            f_score=sum(r.f_score for r in per_domain) / count,
            ndcg=sum(r.ndcg for r in per_domain) / count,
        ))
    return BenchmarkReport(rows=tuple(rows), q=q, recall_mode=recall_mode)
