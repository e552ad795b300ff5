"""Sparse (user, domain) -> value matrices and their normalizations.

Missing entries read as 0. Column operations take an explicit user
universe where implicit zeros matter (min-max scaling); reductions always
iterate in sorted order so results are bit-stable across runs.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Sequence


class DomainMatrix:
    """Associative (user_id, domain) -> float matrix with a name."""

    __slots__ = ("name", "chunk_index", "_entries")

    def __init__(
        self,
        name: str,
        entries: Mapping[tuple[str, str], float] | None = None,
        chunk_index: int | None = None,
    ):
        self.name = name
        self.chunk_index = chunk_index
        self._entries: dict[tuple[str, str], float] = dict(entries) if entries else {}

    def get(self, user_id: str, domain: str, default: float = 0.0) -> float:
        return self._entries.get((user_id, domain), default)

    def set(self, user_id: str, domain: str, value: float) -> None:
        self._entries[(user_id, domain)] = value

    def add(self, user_id: str, domain: str, value: float) -> None:
        key = (user_id, domain)
        self._entries[key] = self._entries.get(key, 0.0) + value

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key: tuple[str, str]) -> bool:
        return key in self._entries

    def items(self) -> Iterator[tuple[tuple[str, str], float]]:
        """Entries in sorted (user, domain) order."""
        return iter(sorted(self._entries.items()))

    def users(self) -> list[str]:
        return sorted({u for u, _ in self._entries})

    def domains(self) -> list[str]:
        return sorted({d for _, d in self._entries})

    def row(self, user_id: str) -> dict[str, float]:
        return {d: v for (u, d), v in sorted(self._entries.items()) if u == user_id}

    def column(self, domain: str) -> dict[str, float]:
        return {u: v for (u, d), v in sorted(self._entries.items()) if d == domain}

    def equals(self, other: "DomainMatrix", tolerance: float = 0.0) -> bool:
        if set(self._entries) != set(other._entries):
            return False
        return all(
            abs(v - other._entries[k]) <= tolerance for k, v in self._entries.items()
        )


def normalize_by_column_max(
    matrix: DomainMatrix, name: str, chunk_index: int | None = None
) -> DomainMatrix:
    """Divide each column by its maximum; columns whose max is <= 0 zero out.

    Output stays sparse: absent entries were 0 and remain 0.
    """
    maxima: dict[str, float] = {}
    for (_, domain), value in sorted(matrix._entries.items()):
        if value > maxima.get(domain, 0.0):
            maxima[domain] = value
    out = DomainMatrix(name, chunk_index=chunk_index)
    for (user, domain), value in sorted(matrix._entries.items()):
        peak = maxima.get(domain, 0.0)
        out.set(user, domain, value / peak if peak > 0 else 0.0)
    return out


def min_max_scale_columns(
    matrix: DomainMatrix,
    name: str,
    users: Sequence[str],
    domains: Iterable[str],
    scale: float = 1.0,
    chunk_index: int | None = None,
) -> DomainMatrix:
    """Per column: (v - min) * scale / (max - min) over the given user universe.

    Users without an entry count as 0, which shifts the minimum; that is the
    point of passing the universe explicitly. Degenerate columns (max == min)
    map to all zeros. Output is dense over users x domains, clamped to
    [0, scale] to absorb float round-off at the endpoints.
    """
    users = sorted(users)
    out = DomainMatrix(name, chunk_index=chunk_index)
    for domain in sorted(domains):
        values = [matrix.get(u, domain) for u in users]
        if not values:
            continue
        lo, hi = min(values), max(values)
        span = hi - lo
        for user, value in zip(users, values):
            if span <= 0:
                out.set(user, domain, 0.0)
            else:
                scaled = (value - lo) * scale / span
                out.set(user, domain, min(scale, max(0.0, scaled)))
    return out
