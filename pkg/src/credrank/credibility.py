"""Per-chunk credibility matrices, temporal aggregation, and trust levels.

For every time chunk the engine derives, per (user, domain):

- content scores from provider taxonomy assignments, discounted by two
  similarity penalties (repetitive texts, repetitive URLs);
- an inverse-domain-frequency factor rewarding focused users;
- a thresholded, column-max-normalized domain weight;
- retweet / like / reply-count matrices, spreading each post's metadata
  counts over its inferred domains proportionally to their scores
  (the relativeness distribution);
- reply-sentiment matrices (positive pool, negative pool, min-max
  normalized balance), excluding the post owner's own replies;
- a profile-age-adjusted follower-friend ratio;
- the weighted blend of the six normalized attributes.

Chunk matrices combine into a window score through a recency-weighted
mean, which is then min-max scaled to [0, 5] per domain and mapped onto a
seven-level trust ladder. Reposts keep their text for domain discovery but
their engagement metadata never earns credibility.

All computations are pure functions of (chunk, config, provider);
reductions iterate users in ascending id order so results are bit-stable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import datetime
from typing import Callable, Iterable, Mapping, Sequence

from .config import AttributeWeights, CredibilityConfig
from .corpus import Corpus, Post, TimeChunk, UserProfile, WindowSpec, partition
from .errors import ConfigError, InputError, InvariantError
from .matrix import DomainMatrix, min_max_scale_columns, normalize_by_column_max
from .semantics import DomainRegistry, SemanticsProvider, TaxonomyAssignment
from .text import default_stopwords, host_of, tokenize

DAYS_PER_YEAR = 365.25

TRUST_SEMANTICS = {
    -1: "New User",
    0: "Very Untrustworthy User",
    1: "Untrustworthy User",
    2: "Partially Trustworthy User",
    3: "Largely Trustworthy User",
    4: "Trustworthy User",
    5: "Very Trustworthy User",
}


# ---------------------------------------------------------------------------
# Similarity penalties
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimilarityPenalties:
    """Per-user redundancy discounts and the counts behind them."""

    twt_sim: float
    url_sim: float
    word_count: int
    distinct_word_count: int
    url_count: int
    distinct_url_count: int
    distinct_host_count: int


def tweet_similarity_penalty(
    texts: Iterable[str], stopwords: frozenset[str] | None = None
) -> float:
    """Distinct content tokens over total content tokens across the texts.

    1.0 when there are no tokens: no text means no redundancy to punish,
    and the text content score vanishes anyway.
    """
    stopwords = stopwords if stopwords is not None else default_stopwords()
    total = 0
    distinct: set[str] = set()
    for text in texts:
        tokens = tokenize(text, stopwords)
        total += len(tokens)
        distinct.update(tokens)
    if total == 0:
        return 1.0
    return len(distinct) / total


def url_similarity_penalty(urls: Iterable[str]) -> float:
    """0.5 * (distinct URLs + distinct hosts) / total URLs; 0 with no URLs.

    The 0.5 factor normalizes the all-unique case to exactly 1.
    """
    urls = list(urls)
    if not urls:
        return 0.0
    distinct_urls = len(set(urls))
    distinct_hosts = len({host_of(u) for u in urls})
    return 0.5 * (distinct_urls + distinct_hosts) / len(urls)


def similarity_penalties(
    posts: Iterable[Post], stopwords: frozenset[str] | None = None
) -> SimilarityPenalties:
    stopwords = stopwords if stopwords is not None else default_stopwords()
    total_words = 0
    distinct_words: set[str] = set()
    urls: list[str] = []
    for post in posts:
        tokens = tokenize(post.text, stopwords)
        total_words += len(tokens)
        distinct_words.update(tokens)
        urls.extend(post.urls)
    return SimilarityPenalties(
        twt_sim=(len(distinct_words) / total_words) if total_words else 1.0,
        url_sim=url_similarity_penalty(urls),
        word_count=total_words,
        distinct_word_count=len(distinct_words),
        url_count=len(urls),
        distinct_url_count=len(set(urls)),
        distinct_host_count=len({host_of(u) for u in urls}) if urls else 0,
    )


# ---------------------------------------------------------------------------
# Relativeness distribution and content scores
# ---------------------------------------------------------------------------

def relativeness_distribute(
    value: float, assignments: Sequence[TaxonomyAssignment]
) -> dict[str, float]:
    """Spread a non-negative scalar over domains proportionally to scores.

    Shares sum to the input value. Empty assignments or an all-zero score
    sum leave the value unattributed (empty mapping).
    """
    if value < 0:
        raise ValueError(f"cannot distribute a negative value: {value}")
    totals: dict[str, float] = {}
    for a in assignments:
        totals[a.domain] = totals.get(a.domain, 0.0) + a.score
    score_sum = sum(totals[d] for d in sorted(totals))
    if not totals or score_sum <= 0:
        return {}
    return {d: value * totals[d] / score_sum for d in sorted(totals)}


def inverse_domain_frequency(
    domain_count: int, total_domains: int, log_base: float | None = None
) -> float:
    """log(n / DF): high when a user sticks to few of the n domains.

    Callers must not pass DF = 0; such users are unrankable, not an IDF of
    infinity.
    """
    if domain_count < 1:
        raise InputError("inverse_domain_frequency requires at least one active domain")
    if total_domains < domain_count:
        raise InputError(
            f"domain_count {domain_count} exceeds registry size {total_domains}"
        )
    ratio = total_domains / domain_count
    if log_base is None:
        return math.log(ratio)
    return math.log(ratio, log_base)


def domain_weight(
    sc: DomainMatrix,
    idf: Mapping[str, float],
    rho: float,
    chunk_index: int | None = None,
) -> tuple[DomainMatrix, DomainMatrix]:
    """Thresholded content-score weight and its column-max normalization.

    Entries with a content score at or below rho are disregarded (strictly
    greater survives); the rest become score * IDF, then each domain column
    is divided by its maximum.
    """
    w = DomainMatrix("W", chunk_index=chunk_index)
    for (user, domain), score in sc.items():
        if score > rho and user in idf:
            w.set(user, domain, score * idf[user])
    return w, normalize_by_column_max(w, "W_prime", chunk_index)


# ---------------------------------------------------------------------------
# Follower-friend ratio
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FollowerFriendRatio:
    """Follower-minus-friend difference per year of profile age."""

    ff_r: float
    age_years: float


def follower_friend_ratio(profile: UserProfile, as_of: datetime) -> FollowerFriendRatio:
    """Difference between followers and friends over profile age in years.

    A zero difference falls back to 1 / age, so younger balanced profiles
    score above older ones. Age is floored at one day.
    """
    if as_of < profile.created_at:
        raise InputError(
            f"as_of predates profile creation for user {profile.user_id!r}"
        )
    age_years = max(
        (as_of - profile.created_at).total_seconds() / (DAYS_PER_YEAR * 86400.0),
        1.0 / DAYS_PER_YEAR,
    )
    diff = profile.followers_count - profile.friends_count
    value = diff / age_years if diff != 0 else 1.0 / age_years
    return FollowerFriendRatio(ff_r=value, age_years=age_years)


def normalize_follower_friend(ratios: Mapping[str, FollowerFriendRatio]) -> dict[str, float]:
    """Min-max normalize raw ratios to [0, 1]; degenerate spread maps to 0."""
    users = sorted(ratios)
    if not users:
        return {}
    values = [ratios[u].ff_r for u in users]
    lo, hi = min(values), max(values)
    span = hi - lo
    if span <= 0:
        return {u: 0.0 for u in users}
    return {u: min(1.0, max(0.0, (v - lo) / span)) for u, v in zip(users, values)}


# ---------------------------------------------------------------------------
# Chunk scoring
# ---------------------------------------------------------------------------

class SemanticsCache:
    """Memoizes provider calls; classification is deterministic per input."""

    def __init__(self, provider: SemanticsProvider):
        self.provider = provider
        self._text: dict[str, tuple[TaxonomyAssignment, ...]] = {}
        self._url: dict[str, tuple[TaxonomyAssignment, ...]] = {}
        self._sentiment: dict[str, float] = {}

    def classify_text(self, text: str) -> tuple[TaxonomyAssignment, ...]:
        if text not in self._text:
            self._text[text] = tuple(self.provider.classify_text(text))
        return self._text[text]

    def classify_url(self, url: str) -> tuple[TaxonomyAssignment, ...]:
        if url not in self._url:
            self._url[url] = tuple(self.provider.classify_url(url))
        return self._url[url]

    def sentiment(self, text: str) -> float:
        if text not in self._sentiment:
            self._sentiment[text] = self.provider.sentiment(text)
        return self._sentiment[text]


def _confident(assignments: Iterable[TaxonomyAssignment], confident_only: bool):
    if not confident_only:
        return list(assignments)
    return [a for a in assignments if a.confident]


class _RawAssignment:
    """Internal unclamped (domain, score) pair for relativeness shares."""

    __slots__ = ("domain", "score")

    def __init__(self, domain: str, score: float):
        self.domain = domain
        self.score = score


def _merge_assignments(*groups: Iterable[TaxonomyAssignment]) -> list[_RawAssignment]:
    """Sum scores per domain across assignment groups (text + URLs of a post).

    Only relative proportions matter downstream, so the merged scores are
    not re-capped at 1.
    """
    totals: dict[str, float] = {}
    for group in groups:
        for a in group:
            totals[a.domain] = totals.get(a.domain, 0.0) + a.score
    return [_RawAssignment(d, totals[d]) for d in sorted(totals)]


@dataclass
class ChunkScores:
    """Every matrix derived for one time chunk."""

    chunk: TimeChunk
    active_users: tuple[str, ...]      # authors with >= 1 post in the chunk
    rankable_users: tuple[str, ...]    # active users with >= 1 scored domain
    penalties: dict[str, SimilarityPenalties]
    sc: DomainMatrix
    df: dict[str, int]
    idf: dict[str, float]
    w: DomainMatrix
    w_prime: DomainMatrix
    r: DomainMatrix
    r_prime: DomainMatrix
    l: DomainMatrix
    l_prime: DomainMatrix
    p: DomainMatrix
    p_prime: DomainMatrix
    sp: DomainMatrix
    sn: DomainMatrix
    s: DomainMatrix
    s_prime: DomainMatrix
    ff: dict[str, FollowerFriendRatio]
    ff_norm: dict[str, float]
    c: DomainMatrix

    def named_matrices(self) -> dict[str, DomainMatrix]:
        return {
            "Sc": self.sc, "W": self.w, "W_prime": self.w_prime,
            "R": self.r, "R_prime": self.r_prime,
            "L": self.l, "L_prime": self.l_prime,
            "P": self.p, "P_prime": self.p_prime,
            "SP": self.sp, "SN": self.sn,
            "S": self.s, "S_prime": self.s_prime,
            "C": self.c,
        }


def content_score_row(
    posts: Sequence[Post],
    penalties: SimilarityPenalties,
    cache: SemanticsCache,
    confident_only: bool = True,
) -> dict[str, float]:
    """One user's content scores: text and URL taxonomy score sums, each
    discounted by the matching similarity penalty.

    Repost texts and URLs still count here; only their engagement metadata
    is excluded elsewhere.
    """
    text_scores: dict[str, float] = {}
    url_scores: dict[str, float] = {}
    for post in posts:
        for a in _confident(cache.classify_text(post.text), confident_only):
            text_scores[a.domain] = text_scores.get(a.domain, 0.0) + a.score
        for url in post.urls:
            for a in _confident(cache.classify_url(url), confident_only):
                url_scores[a.domain] = url_scores.get(a.domain, 0.0) + a.score
    row: dict[str, float] = {}
    for domain in sorted(set(text_scores) | set(url_scores)):
        value = (
            penalties.twt_sim * text_scores.get(domain, 0.0)
            + penalties.url_sim * url_scores.get(domain, 0.0)
        )
        if value > 0:
            row[domain] = value
    return row


def _post_assignments(
    post: Post, cache: SemanticsCache, confident_only: bool
) -> list[_RawAssignment]:
    """Merged per-post domain scores (text plus URL content) for spreading
    the post's metadata counts."""
    groups = [_confident(cache.classify_text(post.text), confident_only)]
    for url in post.urls:
        groups.append(_confident(cache.classify_url(url), confident_only))
    return _merge_assignments(*groups)


def interaction_matrices(
    posts: Sequence[Post],
    assignments_of: Mapping[str, Sequence[_RawAssignment]],
    chunk_index: int | None = None,
) -> tuple[DomainMatrix, ...]:
    """Retweet, like, and reply-count matrices plus their normalizations.

    Each non-repost post spreads its three metadata counts over its domains
    via the relativeness shares; reposts contribute nothing because their
    counts belong to the original author.
    """
    r = DomainMatrix("R", chunk_index=chunk_index)
    l = DomainMatrix("L", chunk_index=chunk_index)
    p = DomainMatrix("P", chunk_index=chunk_index)
    for post in sorted(posts, key=lambda x: (x.user_id, x.created_at, x.post_id)):
        if post.is_retweet:
            continue
        assignments = assignments_of.get(post.post_id, ())
        if not assignments:
            continue
        for matrix, count in ((r, post.retweet_count), (l, post.favorite_count),
                              (p, post.replies_count)):
            if count:
                for domain, share in relativeness_distribute(float(count), assignments).items():
                    matrix.add(post.user_id, domain, share)
    return (
        r, normalize_by_column_max(r, "R_prime", chunk_index),
        l, normalize_by_column_max(l, "L_prime", chunk_index),
        p, normalize_by_column_max(p, "P_prime", chunk_index),
    )


def sentiment_matrices(
    chunk: TimeChunk,
    posts_by_id: Mapping[str, Post],
    assignments_of: Mapping[str, Sequence[_RawAssignment]],
    cache: SemanticsCache,
    universe: Sequence[str],
    domains: Iterable[str],
    chunk_index: int | None = None,
) -> tuple[DomainMatrix, DomainMatrix, DomainMatrix, DomainMatrix]:
    """Positive/negative reply-sentiment pools and the normalized balance.

    Replies by the post's own author are ignored, as are replies to
    reposts. Neutral replies (sentiment 0) join neither pool. The balance
    S = SP - |SN| is min-max normalized per domain over the given user
    universe, where silence counts as 0.
    """
    pos_by_post: dict[str, float] = {}
    neg_by_post: dict[str, float] = {}
    for reply in chunk.replies:
        post = posts_by_id.get(reply.parent_post_id)
        if post is None or post.is_retweet:
            continue
        if reply.author_user_id == post.user_id:
            continue
        value = cache.sentiment(reply.text)
        if value > 0:
            pos_by_post[post.post_id] = pos_by_post.get(post.post_id, 0.0) + value
        elif value < 0:
            neg_by_post[post.post_id] = neg_by_post.get(post.post_id, 0.0) + value

    sp = DomainMatrix("SP", chunk_index=chunk_index)
    sn = DomainMatrix("SN", chunk_index=chunk_index)
    for post_id in sorted(set(pos_by_post) | set(neg_by_post)):
        post = posts_by_id[post_id]
        assignments = assignments_of.get(post_id)
        if assignments is None:
            continue
        positive = pos_by_post.get(post_id, 0.0)
        if positive > 0:
            for domain, share in relativeness_distribute(positive, assignments).items():
                sp.add(post.user_id, domain, share)
        negative = neg_by_post.get(post_id, 0.0)
        if negative < 0:
            for domain, share in relativeness_distribute(-negative, assignments).items():
                sn.add(post.user_id, domain, -share)

    s = DomainMatrix("S", chunk_index=chunk_index)
    for user in sorted({u for u, _ in list(sp._entries) + list(sn._entries)}):
        for domain in sorted({d for (u, d) in list(sp._entries) + list(sn._entries) if u == user}):
            s.set(user, domain, sp.get(user, domain) - abs(sn.get(user, domain)))
    s_prime = min_max_scale_columns(s, "S_prime", universe, domains, chunk_index=chunk_index)
    return sp, sn, s, s_prime


def chunk_credibility(
    ff_norm: Mapping[str, float],
    w_prime: DomainMatrix,
    r_prime: DomainMatrix,
    l_prime: DomainMatrix,
    p_prime: DomainMatrix,
    s_prime: DomainMatrix,
    weights: AttributeWeights,
    users: Sequence[str],
    domains: Iterable[str],
    chunk_index: int | None = None,
) -> DomainMatrix:
    """Weighted blend of the six normalized attributes, dense over the
    rankable users and every registry domain."""
    c = DomainMatrix("C", chunk_index=chunk_index)
    for user in sorted(users):
        base = weights.alpha * ff_norm.get(user, 0.0)
        for domain in sorted(domains):
            value = (
                base
                + weights.beta * w_prime.get(user, domain)
                + weights.gamma * r_prime.get(user, domain)
                + weights.delta * l_prime.get(user, domain)
                + weights.theta * p_prime.get(user, domain)
                + weights.vartheta * s_prime.get(user, domain)
            )
            c.set(user, domain, value)
    return c


def score_chunk(
    chunk: TimeChunk,
    profiles: Mapping[str, UserProfile],
    posts_by_id: Mapping[str, Post],
    provider_or_cache: SemanticsProvider | SemanticsCache,
    config: CredibilityConfig,
    registry: DomainRegistry | None = None,
) -> ChunkScores:
    """Compute every matrix for one chunk."""
    registry = registry or config.registry()
    cache = (
        provider_or_cache
        if isinstance(provider_or_cache, SemanticsCache)
        else SemanticsCache(provider_or_cache)
    )
    stopwords = default_stopwords()

    posts_by_user: dict[str, list[Post]] = {}
    for post in chunk.posts:
        posts_by_user.setdefault(post.user_id, []).append(post)
    active_users = tuple(sorted(posts_by_user))

    penalties = {
        user: similarity_penalties(posts_by_user[user], stopwords)
        for user in active_users
    }

    assignments_of = {
        post.post_id: _post_assignments(post, cache, config.confident_only)
        for post in chunk.posts
    }

    sc = DomainMatrix("Sc", chunk_index=chunk.index)
    df: dict[str, int] = {}
    idf: dict[str, float] = {}
    for user in active_users:
        row = content_score_row(
            posts_by_user[user], penalties[user], cache, config.confident_only
        )
        for domain, value in sorted(row.items()):
            if domain in registry:
                sc.set(user, domain, value)
        active_domains = sum(1 for d in row if d in registry)
        if active_domains >= 1:
            df[user] = active_domains
            idf[user] = inverse_domain_frequency(active_domains, registry.n, config.log_base)
    rankable_users = tuple(sorted(df))

    w, w_prime = domain_weight(sc, idf, config.rho, chunk.index)
    r, r_prime, l, l_prime, p, p_prime = interaction_matrices(
        chunk.posts, assignments_of, chunk.index
    )
    sp, sn, s, s_prime = sentiment_matrices(
        chunk, posts_by_id, assignments_of, cache,
        rankable_users, registry.labels, chunk.index,
    )

    ff = {
        user: follower_friend_ratio(profiles[user], chunk.period_end)
        for user in active_users
        if user in profiles
    }
    ff_norm_all = normalize_follower_friend(ff)
    c = chunk_credibility(
        ff_norm_all, w_prime, r_prime, l_prime, p_prime, s_prime,
        config.weights, rankable_users, registry.labels, chunk.index,
    )

    return ChunkScores(
        chunk=chunk,
        active_users=active_users,
        rankable_users=rankable_users,
        penalties=penalties,
        sc=sc, df=df, idf=idf,
        w=w, w_prime=w_prime,
        r=r, r_prime=r_prime,
        l=l, l_prime=l_prime,
        p=p, p_prime=p_prime,
        sp=sp, sn=sn, s=s, s_prime=s_prime,
        ff=ff, ff_norm=ff_norm_all,
        c=c,
    )


# ---------------------------------------------------------------------------
# Temporal aggregation, scaling, trust levels
# ---------------------------------------------------------------------------

def temporal_credibility(
    chunk_credibilities: Sequence[DomainMatrix],
    weight_of: Callable[[int], float],
    users: Sequence[str],
    domains: Iterable[str],
    rankable_in_chunk: Sequence[frozenset[str]] | None = None,
    mode: str = "zero",
) -> DomainMatrix:
    """Recency-weighted mean of the chunk credibility matrices.

    Chunk k (1 = oldest) contributes with weight w(k). In "zero" mode a
    user absent from a chunk contributes 0 there, so inactivity decays the
    aggregate; "skip" mode averages only over the chunks where the user was
    rankable (requires ``rankable_in_chunk``).
    """
    if not chunk_credibilities:
        raise ConfigError("temporal aggregation needs at least one chunk")
    if mode not in ("zero", "skip"):
        raise ConfigError(f"unknown missing-chunk mode {mode!r}")
    if mode == "skip" and rankable_in_chunk is None:
        raise ConfigError("skip mode requires per-chunk rankable user sets")
    count = len(chunk_credibilities)
    weights = [weight_of(k) for k in range(1, count + 1)]
    if any(w <= 0 for w in weights):
        raise ConfigError("chunk weights must be positive")
    total_weight = sum(weights)

    tc = DomainMatrix("TC")
    for user in sorted(users):
        if mode == "skip":
            present = [k for k in range(count) if user in rankable_in_chunk[k]]
            denom = sum(weights[k] for k in present)
            if denom <= 0:
                continue
        else:
            present = range(count)
            denom = total_weight
        for domain in sorted(domains):
            value = sum(weights[k] * chunk_credibilities[k].get(user, domain) for k in present)
            tc.set(user, domain, value / denom)
    return tc


def scale_credibility(
    tc: DomainMatrix, users: Sequence[str], domains: Iterable[str]
) -> DomainMatrix:
    """Min-max scale each domain column of the window score onto [0, 5]."""
    return min_max_scale_columns(tc, "TC_prime", users, domains, scale=5.0)


@dataclass(frozen=True)
class TrustLevel:
    """One band of the seven-level trust ladder."""

    level: int
    semantics: str
    stars: int

    @classmethod
    def for_level(cls, level: int) -> "TrustLevel":
        if level not in TRUST_SEMANTICS:
            raise InvariantError(f"no trust level {level}")
        return cls(level=level, semantics=TRUST_SEMANTICS[level], stars=max(level, 0))


def trust_level(scaled_value: float | None) -> TrustLevel:
    """Map a scaled credibility value in [0, 5] onto the trust ladder.

    None marks a user with no scored content in the window ("New User").
    Band m covers (m-1, m]; an exact 0 is its own bottom level.
    """
    if scaled_value is None:
        return TrustLevel.for_level(-1)
    if not 0.0 <= scaled_value <= 5.0:
        raise InvariantError(f"scaled credibility out of [0, 5]: {scaled_value}")
    if scaled_value == 0.0:
        return TrustLevel.for_level(0)
    return TrustLevel.for_level(math.ceil(scaled_value))


# ---------------------------------------------------------------------------
# Window orchestration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RankedUser:
    rank: int
    user_id: str
    handle: str
    tc: float
    tc_scaled: float
    level: int
    stars: int


@dataclass
class WindowScores:
    """Scored window: per-chunk matrices, aggregate, scaling, trust levels."""

    chunks: list[ChunkScores]
    domains: tuple[str, ...]
    scored_users: tuple[str, ...]      # rankable in at least one chunk
    unrankable_users: tuple[str, ...]  # every other profiled user
    tc: DomainMatrix
    tc_prime: DomainMatrix
    window_penalties: dict[str, SimilarityPenalties]
    profiles: Mapping[str, UserProfile] = field(repr=False, default_factory=dict)
    config: CredibilityConfig | None = field(repr=False, default=None)

    def is_scored(self, user_id: str) -> bool:
        return user_id in self._scored_set

    def __post_init__(self) -> None:
        self._scored_set = frozenset(self.scored_users)

    def trust_level_for(self, user_id: str, domain: str) -> TrustLevel:
        if domain not in self.domains:
            raise InputError(f"unknown domain {domain!r}")
        if user_id not in self._scored_set:
            return trust_level(None)
        return trust_level(self.tc_prime.get(user_id, domain))

    def rank_domain(self, domain: str, top: int | None = None) -> list[RankedUser]:
        """Users of one domain by scaled credibility, descending; ties break
        on ascending user id. Unrankable users never appear."""
        if domain not in self.domains:
            raise InputError(f"unknown domain {domain!r}")
        if top is not None and top < 1:
            raise InputError(f"top must be >= 1, got {top}")
        rows = sorted(
            ((u, self.tc_prime.get(u, domain)) for u in self.scored_users),
            key=lambda item: (-item[1], item[0]),
        )
        if top is not None:
            rows = rows[:top]
        ranked = []
        for position, (user, scaled) in enumerate(rows, start=1):
            level = trust_level(scaled)
            profile = self.profiles.get(user)
            ranked.append(RankedUser(
                rank=position,
                user_id=user,
                handle=profile.handle if profile else "",
                tc=self.tc.get(user, domain),
                tc_scaled=scaled,
                level=level.level,
                stars=level.stars,
            ))
        return ranked


def score_chunks(
    chunks: Sequence[TimeChunk],
    corpus: Corpus,
    provider: SemanticsProvider,
    config: CredibilityConfig,
) -> WindowScores:
    """Score already-partitioned chunks and aggregate them over the window."""
    if len(chunks) != config.window:
        raise ConfigError(
            f"config window is {config.window} chunks but {len(chunks)} were supplied"
        )
    registry = config.registry()
    cache = SemanticsCache(provider)
    scored_chunks = [
        score_chunk(chunk, corpus.users, corpus.posts, cache, config, registry)
        for chunk in chunks
    ]

    union_rankable = sorted({u for cs in scored_chunks for u in cs.rankable_users})
    rankable_sets = [frozenset(cs.rankable_users) for cs in scored_chunks]
    tc = temporal_credibility(
        [cs.c for cs in scored_chunks],
        config.weight,
        union_rankable,
        registry.labels,
        rankable_in_chunk=rankable_sets,
        mode=config.missing_chunk_mode,
    )
    tc_prime = scale_credibility(tc, union_rankable, registry.labels)

    window_posts: dict[str, list[Post]] = {user: [] for user in corpus.users}
    for cs in scored_chunks:
        for post in cs.chunk.posts:
            window_posts[post.user_id].append(post)
    stopwords = default_stopwords()
    window_penalties = {
        user: similarity_penalties(posts, stopwords)
        for user, posts in sorted(window_posts.items())
    }

    unrankable = tuple(u for u in sorted(corpus.users) if u not in set(union_rankable))
    return WindowScores(
        chunks=scored_chunks,
        domains=registry.labels,
        scored_users=tuple(union_rankable),
        unrankable_users=unrankable,
        tc=tc,
        tc_prime=tc_prime,
        window_penalties=window_penalties,
        profiles=corpus.users,
        config=config,
    )


def score_corpus(
    corpus: Corpus,
    provider: SemanticsProvider,
    config: CredibilityConfig | None = None,
) -> WindowScores:
    """Partition a cleansed corpus into the configured window and score it."""
    config = config or CredibilityConfig()
    chunks = partition(
        corpus,
        WindowSpec(chunks=config.window, period=config.period, window_end=config.window_end),
    )
    return score_chunks(chunks, corpus, provider, config)
