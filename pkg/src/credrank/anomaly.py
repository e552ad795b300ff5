"""Anomalous-user retrieval and retrieval-precision scoring.

Two content criteria select users stuck at the bottom of the trust ladder
in every domain and order them by how repetitive their texts or URLs are;
a low-in-degree followers sort serves as the naive baseline.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .credibility import WindowScores
from .errors import InputError

CRITERIA = (
    "very_untrustworthy_low_twt_sim",
    "very_untrustworthy_low_url_sim",
    "low_in_degree",
)

LABEL_NORMAL = "normal"
LABEL_ANOMALOUS = "anomalous"


@dataclass(frozen=True)
class AnomalyQuery:
    criterion: str
    top_k: int

    def __post_init__(self) -> None:
        if self.criterion not in CRITERIA:
            raise InputError(f"unknown criterion {self.criterion!r}; known: {CRITERIA}")
        if self.top_k < 1:
            raise InputError(f"top_k must be >= 1, got {self.top_k}")


@dataclass(frozen=True)
class AnomalyLabelSet:
    """user_id -> normal | anomalous, usually from a hand-labeled CSV."""

    labels: Mapping[str, str]

    def __post_init__(self) -> None:
        bad = sorted(
            u for u, l in self.labels.items() if l not in (LABEL_NORMAL, LABEL_ANOMALOUS)
        )
        if bad:
            raise InputError(f"labels must be 'normal' or 'anomalous'; bad users: {bad[:5]}")

    def label(self, user_id: str) -> str | None:
        return self.labels.get(user_id)

    @classmethod
    def load_csv(cls, path: str | Path) -> "AnomalyLabelSet":
        labels: dict[str, str] = {}
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            for row_no, row in enumerate(reader, start=1):
                if not row or (row_no == 1 and row[0].strip().lower() == "user_id"):
                    continue
                if len(row) < 2:
                    raise InputError(f"{path}: line {row_no}: expected user_id,label")
                labels[row[0].strip()] = row[1].strip().lower()
        return cls(labels)


def _zero_everywhere(scores: WindowScores, user_id: str) -> bool:
    return all(scores.tc_prime.get(user_id, d) == 0.0 for d in scores.domains)


def query_anomalies(
    scores: WindowScores, query: AnomalyQuery, include_unrankable: bool | None = None
) -> list[tuple[str, float]]:
    """Retrieve candidate anomalous users as (user_id, criterion value) rows.

    The two content criteria keep only users whose scaled credibility is 0
    in every registry domain, then sort ascending by the tweet- or
    URL-similarity penalty over the whole window. Users with no scored
    content at all also qualify (their content never earned a level), which
    is what the unrankable flag controls. The baseline criterion sorts all
    profiled users by follower count. Ties break on ascending user id, and
    asking for more rows than exist returns everything.
    """
    if include_unrankable is None:
        include_unrankable = (
            scores.config.anomaly_include_unrankable if scores.config is not None else True
        )

    if query.criterion == "low_in_degree":
        rows = sorted(
            ((uid, float(profile.followers_count)) for uid, profile in scores.profiles.items()),
            key=lambda item: (item[1], item[0]),
        )
        return rows[: query.top_k]

    candidates = [u for u in scores.scored_users if _zero_everywhere(scores, u)]
    if include_unrankable:
        candidates.extend(scores.unrankable_users)

    def penalty(user_id: str) -> float:
        p = scores.window_penalties.get(user_id)
        if p is None:
            return 1.0 if query.criterion == "very_untrustworthy_low_twt_sim" else 0.0
        return p.twt_sim if query.criterion == "very_untrustworthy_low_twt_sim" else p.url_sim

    rows = sorted(((u, penalty(u)) for u in candidates), key=lambda item: (item[1], item[0]))
    return rows[: query.top_k]


def anomaly_precision(
    retrieved: Sequence[str], labels: AnomalyLabelSet, k: int
) -> float:
    """Fraction of the retrieved users judged anomalous, at cutoff k.

    The denominator is the number of users actually retrieved (at most k);
    every one of them must be labeled.
    """
    if k < 1:
        raise InputError(f"cutoff k must be >= 1, got {k}")
    top = list(retrieved[:k])
    if not top:
        raise InputError("no retrieved users to evaluate")
    hits = 0
    for user in top:
        label = labels.label(user)
        if label is None:
            raise InputError(f"retrieved user {user!r} has no label")
        if label == LABEL_ANOMALOUS:
            hits += 1
    return hits / len(top)


def precision_at_cutoffs(
    retrieved: Sequence[str],
    labels: AnomalyLabelSet,
    cutoffs: Sequence[int] = (10, 20, 30, 40, 50),
) -> dict:
    """Per-cutoff precision plus the average across cutoffs."""
    per_cutoff = {k: anomaly_precision(retrieved, labels, k) for k in cutoffs}
    return {
        "cutoffs": {str(k): per_cutoff[k] for k in cutoffs},
        "average": sum(per_cutoff.values()) / len(per_cutoff),
    }
