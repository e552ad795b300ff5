"""Tokenization and URL helpers shared by cleansing, similarity penalties,
and the lexicon semantics provider.

The token rule set is deliberately small and deterministic:
whitespace split, URLs and @mentions dropped, hashtag marks stripped,
surrounding punctuation removed, lowercased, optional stopword filter.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources
from typing import Collection
from urllib.parse import urlparse

_EDGE_PUNCT = re.compile(r"^[\W_]+|[\W_]+$", re.UNICODE)
_ASCII_LETTERS = re.compile(r"[A-Za-z]+\Z")


def _looks_like_url(token: str) -> bool:
    low = token.lower()
    return "://" in low or low.startswith("www.")


def tokenize(text: str, stopwords: Collection[str] | None = None) -> list[str]:
    """Split text into lowercased content tokens.

    URL-shaped tokens and @mentions are dropped entirely; hashtag bodies are
    kept without the '#'; leading/trailing punctuation is stripped. Tokens in
    ``stopwords`` (already lowercased) are removed when a set is given.
    """
    tokens: list[str] = []
    for raw in text.split():
        if _looks_like_url(raw) or raw.startswith("@"):
            continue
        if raw.startswith("#"):
            raw = raw.lstrip("#")
        tok = _EDGE_PUNCT.sub("", raw).lower()
        if not tok:
            continue
        if stopwords is not None and tok in stopwords:
            continue
        tokens.append(tok)
    return tokens


def host_of(url: str) -> str:
    """Lowercased authority of a URL without userinfo or port ('' if none)."""
    netloc = urlparse(url).netloc
    if "@" in netloc:
        netloc = netloc.rsplit("@", 1)[1]
    # Strip a :port suffix; IPv6 literals keep their brackets.
    if netloc.count(":") == 1 and not netloc.endswith("]"):
        netloc = netloc.rsplit(":", 1)[0]
    return netloc.lower()


def is_valid_absolute_url(url: str) -> bool:
    """Accept http(s)/ftp URLs with a host, and file URLs with a path."""
    try:
        parsed = urlparse(url)
    except ValueError:
        return False
    if parsed.scheme in ("http", "https", "ftp"):
        return bool(parsed.netloc)
    if parsed.scheme == "file":
        return bool(parsed.netloc or parsed.path)
    return False


def host_matches(host: str, blocked: str) -> bool:
    """Registrable-suffix match: 'www.instagram.com' matches 'instagram.com'."""
    host = host.lower()
    blocked = blocked.lower()
    return host == blocked or host.endswith("." + blocked)


def ascii_letter_token_ratio(text: str) -> float:
    """Fraction of non-URL tokens made purely of ASCII letters (0 if none).

    Used by the reference language check: crude, but deterministic.
    """
    considered = 0
    lettered = 0
    for raw in text.split():
        if _looks_like_url(raw):
            continue
        tok = _EDGE_PUNCT.sub("", raw)
        if not tok:
            continue
        considered += 1
        if _ASCII_LETTERS.fullmatch(tok):
            lettered += 1
    if considered == 0:
        return 0.0
    return lettered / considered


@lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    """Stopword list shipped with the package (one lowercase word per line)."""
    raw = resources.files("credrank.data").joinpath("stopwords.txt").read_text("utf-8")
    words = set()
    for line in raw.splitlines():
        word = line.strip().lower()
        if word and not word.startswith("#"):
            words.add(word)
    return frozenset(words)
