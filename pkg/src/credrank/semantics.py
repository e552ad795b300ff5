"""Taxonomy and sentiment inference.

The credibility core consumes a ``SemanticsProvider``: anything that can
classify a text or URL into up to three scored domains, rate reply
sentiment in [-1, 1], and answer a language check. The shipped
``LexiconSemanticsProvider`` is a deterministic keyword classifier so the
whole pipeline runs offline and reproducibly; swap in a smarter provider
without touching the scoring code.
"""

from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Callable, Mapping, Protocol, Sequence
from urllib.parse import unquote, urlparse

from .errors import ConfigError
from .text import ascii_letter_token_ratio, tokenize

logger = logging.getLogger(__name__)

MAX_ASSIGNMENTS = 3


@dataclass(frozen=True)
class TaxonomyAssignment:
    """One inferred domain for a text: label, score in [0, 1], confidence flag."""

    domain: str
    score: float
    confident: bool

    def __post_init__(self) -> None:
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"assignment score out of [0, 1]: {self.score}")


class DomainRegistry:
    """Fixed, ordered list of domain labels the engine scores against."""

    def __init__(self, labels: Sequence[str]):
        labels = tuple(labels)
        if not labels:
            raise ConfigError("domain registry must contain at least one label")
        if len(set(labels)) != len(labels):
            raise ConfigError("domain registry contains duplicate labels")
        if any(not isinstance(l, str) or not l.strip() for l in labels):
            raise ConfigError("domain registry labels must be non-empty strings")
        self.labels = labels
        self._index = frozenset(labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: str) -> bool:
        return label in self._index

    def __iter__(self):
        return iter(self.labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    @classmethod
    def load(cls, path: str | Path) -> "DomainRegistry":
        with open(path, encoding="utf-8") as fh:
            labels = json.load(fh)
        if not isinstance(labels, list):
            raise ConfigError(f"domain registry file must be a JSON array: {path}")
        return cls(labels)

    @classmethod
    def default(cls) -> "DomainRegistry":
        return _default_registry()


@lru_cache(maxsize=1)
def _default_registry() -> DomainRegistry:
    raw = resources.files("credrank.data").joinpath("domains.json").read_text("utf-8")
    return DomainRegistry(json.loads(raw))


@lru_cache(maxsize=1)
def _default_domain_lexicon() -> dict[str, tuple[str, ...]]:
    raw = resources.files("credrank.data").joinpath("domain_lexicon.json").read_text("utf-8")
    return {d: tuple(words) for d, words in json.loads(raw).items()}


@lru_cache(maxsize=1)
def _default_sentiment_lexicon() -> dict[str, tuple[str, ...]]:
    raw = resources.files("credrank.data").joinpath("sentiment_lexicon.json").read_text("utf-8")
    return {k: tuple(words) for k, words in json.loads(raw).items()}


class SemanticsProvider(Protocol):
    """Contract the scoring pipeline programs against."""

    def classify_text(self, text: str) -> list[TaxonomyAssignment]: ...

    def classify_url(
        self, url: str, resolver: Callable[[str], str | None] | None = None
    ) -> list[TaxonomyAssignment]: ...

    def sentiment(self, text: str) -> float: ...

    def is_english(self, text: str) -> bool: ...


# ---------------------------------------------------------------------------
# URL resolvers
# ---------------------------------------------------------------------------

class FileURLResolver:
    """Resolve file:// URLs to their text content; everything else is None.

    An optional ``root`` jails resolution under a directory, which is what
    tests and fixtures use. No network access, ever.
    """

    def __init__(self, root: str | Path | None = None):
        self.root = Path(root) if root is not None else None

    def __call__(self, url: str) -> str | None:
        parsed = urlparse(url)
        if parsed.scheme != "file":
            return None
        path = Path(unquote(parsed.path))
        if self.root is not None:
            path = self.root / path.relative_to("/") if path.is_absolute() else self.root / path
        try:
            return path.read_text("utf-8")
        except OSError:
            return None


class StaticURLResolver:
    """Resolve URLs from an in-memory mapping; the fixture mechanism."""

    def __init__(self, contents: Mapping[str, str]):
        self._contents = dict(contents)

    def __call__(self, url: str) -> str | None:
        return self._contents.get(url)


# ---------------------------------------------------------------------------
# Reference provider
# ---------------------------------------------------------------------------

class LexiconSemanticsProvider:
    """Bag-of-tokens keyword classifier.

    Per text: count token occurrences against each domain's keyword list,
    keep the top three domains by hit count, and score each matched domain
    as hits(d) / max hits. The result is flagged confident when the text
    produced at least two keyword hits in total. Sentiment is the signed
    hit balance (pos - neg) / (pos + neg). Everything is deterministic and
    insensitive to token order.
    """

    def __init__(
        self,
        registry: DomainRegistry | None = None,
        domain_lexicon: Mapping[str, Sequence[str]] | None = None,
        sentiment_lexicon: Mapping[str, Sequence[str]] | None = None,
        resolver: Callable[[str], str | None] | None = None,
    ):
        self.registry = registry or DomainRegistry.default()
        lexicon = domain_lexicon if domain_lexicon is not None else _default_domain_lexicon()
        unknown = sorted(set(lexicon) - set(self.registry.labels))
        if unknown:
            raise ConfigError(f"lexicon references domains outside the registry: {unknown}")
        # Reverse index token -> domains; a keyword may serve several domains.
        token_domains: dict[str, list[str]] = {}
        for domain in sorted(lexicon):
            for word in lexicon[domain]:
                token_domains.setdefault(word.lower(), []).append(domain)
        self._token_domains = {t: tuple(ds) for t, ds in token_domains.items()}

        senti = sentiment_lexicon if sentiment_lexicon is not None else _default_sentiment_lexicon()
        self._positive = frozenset(w.lower() for w in senti.get("positive", ()))
        self._negative = frozenset(w.lower() for w in senti.get("negative", ()))
        overlap = self._positive & self._negative
        if overlap:
            raise ConfigError(f"sentiment lexicon lists words as both polarities: {sorted(overlap)}")
        self._resolver = resolver if resolver is not None else FileURLResolver()

    @classmethod
    def from_files(
        cls,
        domains_file: str | Path | None = None,
        lexicon_file: str | Path | None = None,
        sentiment_file: str | Path | None = None,
        resolver: Callable[[str], str | None] | None = None,
    ) -> "LexiconSemanticsProvider":
        registry = DomainRegistry.load(domains_file) if domains_file else None
        lexicon = None
        if lexicon_file:
            with open(lexicon_file, encoding="utf-8") as fh:
                lexicon = json.load(fh)
        senti = None
        if sentiment_file:
            with open(sentiment_file, encoding="utf-8") as fh:
                senti = json.load(fh)
        return cls(registry, lexicon, senti, resolver)

    # -- classification -----------------------------------------------------

    def classify_text(self, text: str) -> list[TaxonomyAssignment]:
        hits: Counter[str] = Counter()
        for token in tokenize(text):
            for domain in self._token_domains.get(token, ()):
                hits[domain] += 1
        if not hits:
            return []
        total = sum(hits.values())
        confident = total >= 2
        top = sorted(hits, key=lambda d: (-hits[d], d))[:MAX_ASSIGNMENTS]
        max_hits = hits[top[0]]
        return [
            TaxonomyAssignment(domain=d, score=hits[d] / max_hits, confident=confident)
            for d in top
        ]

    def classify_url(
        self, url: str, resolver: Callable[[str], str | None] | None = None
    ) -> list[TaxonomyAssignment]:
        resolve = resolver if resolver is not None else self._resolver
        try:
            content = resolve(url)
        except Exception:  # a broken resolver must not take down the pipeline
            logger.debug("resolver raised for %s", url, exc_info=True)
            content = None
        if content is None:
            logger.debug("URL content unavailable, no domains inferred: %s", url)
            return []
        return self.classify_text(content)

    def sentiment(self, text: str) -> float:
        pos = neg = 0
        for token in tokenize(text):
            if token in self._positive:
                pos += 1
            elif token in self._negative:
                neg += 1
        if pos + neg == 0:
            return 0.0
        return (pos - neg) / (pos + neg)

    def is_english(self, text: str) -> bool:
        return ascii_letter_token_ratio(text) >= 0.7
