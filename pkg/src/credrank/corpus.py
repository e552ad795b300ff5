"""Corpus records, JSONL ingestion, cleansing, and time partitioning.

Schemas (one JSON object per line):

- users.jsonl   {"user_id", "handle", "created_at", "followers_count",
                 "friends_count", "bio"}
- posts.jsonl   {"post_id", "user_id", "created_at", "text", "urls",
                 "retweet_count", "favorite_count", "replies_count",
                 "is_retweet", "language"}
- replies.jsonl {"reply_id", "parent_post_id", "author_user_id",
                 "created_at", "text"}

Timestamps are ISO-8601 and normalized to UTC. A ``Corpus`` is immutable
after construction and enforces referential integrity; malformed or
dangling records are rejected at ingestion with line-level diagnostics
rather than raising.
"""

from __future__ import annotations

import dataclasses
import json
import logging
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ConfigError, InputError, InvariantError
from .text import host_matches, host_of, is_valid_absolute_url

logger = logging.getLogger(__name__)

PERIODS = ("month", "week", "day")


def parse_utc(value: str) -> datetime:
    """Parse an ISO-8601 timestamp; naive values are taken as UTC."""
    if not isinstance(value, str):
        raise ValueError(f"timestamp must be a string, got {type(value).__name__}")
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    ts = datetime.fromisoformat(text)
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def format_utc(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")


def _require_utc(ts: datetime, what: str) -> datetime:
    if not isinstance(ts, datetime) or ts.tzinfo is None:
        raise ValueError(f"{what} must be a timezone-aware datetime")
    return ts.astimezone(timezone.utc)


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UserProfile:
    user_id: str
    handle: str
    created_at: datetime
    followers_count: int
    friends_count: int
    bio: str = ""

    def __post_init__(self) -> None:
        if not self.user_id:
            raise ValueError("user_id must be non-empty")
        if self.followers_count < 0 or self.friends_count < 0:
            raise ValueError(f"user {self.user_id}: negative follower/friend count")
        object.__setattr__(self, "created_at", _require_utc(self.created_at, "created_at"))


@dataclass(frozen=True)
class Post:
    post_id: str
    user_id: str
    created_at: datetime
    text: str
    urls: tuple[str, ...] = ()
    retweet_count: int = 0
    favorite_count: int = 0
    replies_count: int = 0
    is_retweet: bool = False
    language: str | None = None

    def __post_init__(self) -> None:
        if not self.post_id:
            raise ValueError("post_id must be non-empty")
        if min(self.retweet_count, self.favorite_count, self.replies_count) < 0:
            raise ValueError(f"post {self.post_id}: negative count")
        object.__setattr__(self, "urls", tuple(self.urls))
        object.__setattr__(self, "created_at", _require_utc(self.created_at, "created_at"))


@dataclass(frozen=True)
class Reply:
    reply_id: str
    parent_post_id: str
    author_user_id: str
    created_at: datetime
    text: str

    def __post_init__(self) -> None:
        if not self.reply_id:
            raise ValueError("reply_id must be non-empty")
        object.__setattr__(self, "created_at", _require_utc(self.created_at, "created_at"))


class Corpus:
    """Immutable container of users, posts, and replies with integrity checks.

    Reply authors may fall outside the profiled user set (threads attract
    strangers); every other reference must resolve.
    """

    __slots__ = ("users", "posts", "replies", "_posts_by_user", "_replies_by_post")

    def __init__(
        self,
        users: Iterable[UserProfile],
        posts: Iterable[Post],
        replies: Iterable[Reply],
    ):
        users_map: dict[str, UserProfile] = {}
        for user in users:
            if user.user_id in users_map:
                raise InvariantError(f"duplicate user_id {user.user_id!r}")
            users_map[user.user_id] = user

        posts_map: dict[str, Post] = {}
        for post in posts:
            if post.post_id in posts_map:
                raise InvariantError(f"duplicate post_id {post.post_id!r}")
            author = users_map.get(post.user_id)
            if author is None:
                raise InvariantError(f"post {post.post_id!r} references unknown user {post.user_id!r}")
            if post.created_at < author.created_at:
                raise InvariantError(
                    f"post {post.post_id!r} predates its author's profile creation"
                )
            posts_map[post.post_id] = post

        replies_map: dict[str, Reply] = {}
        for reply in replies:
            if reply.reply_id in replies_map:
                raise InvariantError(f"duplicate reply_id {reply.reply_id!r}")
            if reply.parent_post_id not in posts_map:
                raise InvariantError(
                    f"reply {reply.reply_id!r} references unknown post {reply.parent_post_id!r}"
                )
            replies_map[reply.reply_id] = reply

        self.users: Mapping[str, UserProfile] = dict(sorted(users_map.items()))
        self.posts: Mapping[str, Post] = dict(sorted(posts_map.items()))
        self.replies: Mapping[str, Reply] = dict(sorted(replies_map.items()))

        by_user: dict[str, list[Post]] = {}
        for post in self.posts.values():
            by_user.setdefault(post.user_id, []).append(post)
        self._posts_by_user = {
            uid: tuple(sorted(ps, key=lambda p: (p.created_at, p.post_id)))
            for uid, ps in by_user.items()
        }
        by_post: dict[str, list[Reply]] = {}
        for reply in self.replies.values():
            by_post.setdefault(reply.parent_post_id, []).append(reply)
        self._replies_by_post = {
            pid: tuple(sorted(rs, key=lambda r: (r.created_at, r.reply_id)))
            for pid, rs in by_post.items()
        }

    def posts_by_user(self, user_id: str) -> tuple[Post, ...]:
        return self._posts_by_user.get(user_id, ())

    def replies_to_post(self, post_id: str) -> tuple[Reply, ...]:
        return self._replies_by_post.get(post_id, ())

    def newest_post_time(self) -> datetime | None:
        newest = None
        for post in self.posts.values():
            if newest is None or post.created_at > newest:
                newest = post.created_at
        return newest

    def counts(self) -> dict[str, int]:
        return {"users": len(self.users), "posts": len(self.posts), "replies": len(self.replies)}


# ---------------------------------------------------------------------------
# Ingestion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IngestDiagnostic:
    """One rejected record or dropped field, with enough context to fix it."""

    source: str          # users | posts | replies
    line: int            # 1-based line number in the source stream
    message: str
    field: str | None = None
    record_id: str | None = None
    fatal: bool = True   # False: record kept, offending field adjusted

    def to_json(self) -> dict:
        return dataclasses.asdict(self)


class _RecordError(Exception):
    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


def _want(obj: dict, key: str, kind, line_kind: str):
    if key not in obj:
        raise _RecordError(f"missing field {key!r}", field=key)
    value = obj[key]
    if kind is int:
        # bool is an int subclass; counts must be plain integers
        if isinstance(value, bool) or not isinstance(value, int):
            raise _RecordError(f"field {key!r} must be an integer", field=key)
    elif kind is bool:
        if not isinstance(value, bool):
            raise _RecordError(f"field {key!r} must be a boolean", field=key)
    elif not isinstance(value, kind):
        raise _RecordError(f"field {key!r} must be {kind.__name__}", field=key)
    return value


def _parse_ts_field(obj: dict, key: str) -> datetime:
    raw = _want(obj, key, str, "")
    try:
        return parse_utc(raw)
    except ValueError as exc:
        raise _RecordError(f"field {key!r}: {exc}", field=key)


def ingest(
    user_lines: Iterable[str],
    post_lines: Iterable[str],
    reply_lines: Iterable[str],
) -> tuple[Corpus, list[IngestDiagnostic]]:
    """Load JSONL streams into a Corpus, rejecting bad records with diagnostics.

    Deterministic: identical input bytes produce an identical Corpus. Order
    of rejection checks per record: JSON shape, field types, uniqueness,
    then referential integrity.
    """
    diagnostics: list[IngestDiagnostic] = []

    def reject(source: str, line: int, exc: _RecordError, record_id: str | None = None) -> None:
        diagnostics.append(
            IngestDiagnostic(source, line, str(exc), field=exc.field, record_id=record_id)
        )

    users: dict[str, UserProfile] = {}
    for line_no, raw in enumerate(user_lines, start=1):
        raw = raw.strip()
        if not raw:
            continue
        try:
            obj = json.loads(raw)
            if not isinstance(obj, dict):
                raise _RecordError("record is not a JSON object")
            user = UserProfile(
                user_id=_want(obj, "user_id", str, "users"),
                handle=_want(obj, "handle", str, "users"),
                created_at=_parse_ts_field(obj, "created_at"),
                followers_count=_want(obj, "followers_count", int, "users"),
                friends_count=_want(obj, "friends_count", int, "users"),
                bio=str(obj.get("bio", "")),
            )
        except json.JSONDecodeError as exc:
            reject("users", line_no, _RecordError(f"invalid JSON: {exc.msg}"))
            continue
        except (_RecordError,) as exc:
            reject("users", line_no, exc)
            continue
        except ValueError as exc:
            reject("users", line_no, _RecordError(str(exc)))
            continue
        if user.user_id in users:
            reject("users", line_no, _RecordError(f"duplicate user_id {user.user_id!r}", "user_id"),
                   record_id=user.user_id)
            continue
        users[user.user_id] = user

    posts: dict[str, Post] = {}
    for line_no, raw in enumerate(post_lines, start=1):
        raw = raw.strip()
        if not raw:
            continue
        try:
            obj = json.loads(raw)
            if not isinstance(obj, dict):
                raise _RecordError("record is not a JSON object")
            urls_raw = _want(obj, "urls", list, "posts")
            language = obj.get("language")
            if language is not None and not isinstance(language, str):
                raise _RecordError("field 'language' must be a string or null", "language")
            post = Post(
                post_id=_want(obj, "post_id", str, "posts"),
                user_id=_want(obj, "user_id", str, "posts"),
                created_at=_parse_ts_field(obj, "created_at"),
                text=_want(obj, "text", str, "posts"),
                urls=(),
                retweet_count=_want(obj, "retweet_count", int, "posts"),
                favorite_count=_want(obj, "favorite_count", int, "posts"),
                replies_count=_want(obj, "replies_count", int, "posts"),
                is_retweet=_want(obj, "is_retweet", bool, "posts"),
                language=language,
            )
        except json.JSONDecodeError as exc:
            reject("posts", line_no, _RecordError(f"invalid JSON: {exc.msg}"))
            continue
        except (_RecordError,) as exc:
            reject("posts", line_no, exc)
            continue
        except ValueError as exc:
            reject("posts", line_no, _RecordError(str(exc)))
            continue

        if post.post_id in posts:
            reject("posts", line_no,
                   _RecordError(f"duplicate post_id {post.post_id!r}", "post_id"),
                   record_id=post.post_id)
            continue
        author = users.get(post.user_id)
        if author is None:
            reject("posts", line_no,
                   _RecordError(f"unknown user_id {post.user_id!r}", "user_id"),
                   record_id=post.post_id)
            continue
        if post.created_at < author.created_at:
            reject("posts", line_no,
                   _RecordError("post predates its author's profile creation", "created_at"),
                   record_id=post.post_id)
            continue

        kept_urls = []
        for url in urls_raw:
            if isinstance(url, str) and is_valid_absolute_url(url):
                kept_urls.append(url)
            else:
                diagnostics.append(IngestDiagnostic(
                    "posts", line_no, f"dropped invalid URL {url!r}",
                    field="urls", record_id=post.post_id, fatal=False,
                ))
        posts[post.post_id] = dataclasses.replace(post, urls=tuple(kept_urls))

    replies: dict[str, Reply] = {}
    for line_no, raw in enumerate(reply_lines, start=1):
        raw = raw.strip()
        if not raw:
            continue
        try:
            obj = json.loads(raw)
            if not isinstance(obj, dict):
                raise _RecordError("record is not a JSON object")
            reply = Reply(
                reply_id=_want(obj, "reply_id", str, "replies"),
                parent_post_id=_want(obj, "parent_post_id", str, "replies"),
                author_user_id=_want(obj, "author_user_id", str, "replies"),
                created_at=_parse_ts_field(obj, "created_at"),
                text=_want(obj, "text", str, "replies"),
            )
        except json.JSONDecodeError as exc:
            reject("replies", line_no, _RecordError(f"invalid JSON: {exc.msg}"))
            continue
        except (_RecordError,) as exc:
            reject("replies", line_no, exc)
            continue
        except ValueError as exc:
            reject("replies", line_no, _RecordError(str(exc)))
            continue
        if reply.reply_id in replies:
            reject("replies", line_no,
                   _RecordError(f"duplicate reply_id {reply.reply_id!r}", "reply_id"),
                   record_id=reply.reply_id)
            continue
        if reply.parent_post_id not in posts:
            reject("replies", line_no,
                   _RecordError(f"unknown parent_post_id {reply.parent_post_id!r}", "parent_post_id"),
                   record_id=reply.reply_id)
            continue
        replies[reply.reply_id] = reply

    corpus = Corpus(users.values(), posts.values(), replies.values())
    for diag in diagnostics:
        logger.info("ingest: %s line %d: %s", diag.source, diag.line, diag.message)
    return corpus, diagnostics


def ingest_dir(path: str | Path) -> tuple[Corpus, list[IngestDiagnostic]]:
    """Ingest users/posts/replies JSONL files from a directory."""
    path = Path(path)
    streams = []
    for name in ("users.jsonl", "posts.jsonl", "replies.jsonl"):
        file = path / name
        if not file.is_file():
            raise InputError(f"missing input file: {file}")
        streams.append(file.read_text("utf-8").splitlines())
    return ingest(*streams)


def write_corpus(corpus: Corpus, out_dir: str | Path) -> None:
    """Serialize a corpus back to the three JSONL files."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "users.jsonl", "w", encoding="utf-8") as fh:
        for user in corpus.users.values():
            fh.write(json.dumps({
                "user_id": user.user_id,
                "handle": user.handle,
                "created_at": format_utc(user.created_at),
                "followers_count": user.followers_count,
                "friends_count": user.friends_count,
                "bio": user.bio,
            }) + "\n")
    with open(out / "posts.jsonl", "w", encoding="utf-8") as fh:
        for post in corpus.posts.values():
            fh.write(json.dumps({
                "post_id": post.post_id,
                "user_id": post.user_id,
                "created_at": format_utc(post.created_at),
                "text": post.text,
                "urls": list(post.urls),
                "retweet_count": post.retweet_count,
                "favorite_count": post.favorite_count,
                "replies_count": post.replies_count,
                "is_retweet": post.is_retweet,
                "language": post.language,
            }) + "\n")
    with open(out / "replies.jsonl", "w", encoding="utf-8") as fh:
        for reply in corpus.replies.values():
            fh.write(json.dumps({
                "reply_id": reply.reply_id,
                "parent_post_id": reply.parent_post_id,
                "author_user_id": reply.author_user_id,
                "created_at": format_utc(reply.created_at),
                "text": reply.text,
            }) + "\n")


# ---------------------------------------------------------------------------
# Cleansing
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1)
def default_media_hosts() -> tuple[str, ...]:
    raw = resources.files("credrank.data").joinpath("media_hosts.txt").read_text("utf-8")
    hosts = []
    for line in raw.splitlines():
        host = line.strip().lower()
        if host and not host.startswith("#"):
            hosts.append(host)
    return tuple(hosts)


@dataclass(frozen=True)
class CleansingConfig:
    min_posts: int = 50
    media_hosts: tuple[str, ...] = field(default_factory=default_media_hosts)
    remove_non_english: bool = True

    def __post_init__(self) -> None:
        if self.min_posts < 0:
            raise ConfigError("min_posts must be >= 0")
        object.__setattr__(self, "media_hosts", tuple(h.lower() for h in self.media_hosts))


@dataclass(frozen=True)
class RuleCount:
    examined: int = 0
    removed: int = 0

    @property
    def retained(self) -> int:
        return self.examined - self.removed

    def to_json(self) -> dict:
        return {"examined": self.examined, "removed": self.removed, "retained": self.retained}


@dataclass(frozen=True)
class CleansingReport:
    """Per-rule record counts. 'removed' counts the records each rule removed,
    except for retweet-metadata zeroing where it counts records normalized
    in place. Cascade deletions that merely restore referential integrity
    (replies of a removed post) are not broken out per rule.
    """

    duplicates: RuleCount          # over posts
    low_activity_users: RuleCount  # over users
    media_urls: RuleCount          # over embedded URLs
    non_english: RuleCount         # over posts
    retweet_metadata: RuleCount    # over posts (zeroed, not removed)
    owner_replies: RuleCount       # over replies

    def to_json(self) -> dict:
        return {name: getattr(self, name).to_json() for name in (
            "duplicates", "low_activity_users", "media_urls",
            "non_english", "retweet_metadata", "owner_replies",
        )}


def _normalized_text(text: str) -> str:
    return " ".join(text.split())


def cleanse(
    corpus: Corpus,
    config: CleansingConfig | None = None,
    provider=None,
) -> tuple[Corpus, CleansingReport]:
    """Apply the cleansing rules in order and report per-rule counts.

    1. exact-duplicate posts (same author, same whitespace-normalized text,
       same URL multiset) collapse to the earliest occurrence;
    2. users with fewer than ``min_posts`` posts are dropped with their
       posts and replies;
    3. URLs on media-sharing hosts are stripped from posts;
    4. posts the provider flags as non-English are dropped with their
       replies (skipped when no provider is given or the flag is off);
    5. repost metadata counts are zeroed, since they describe the original
       post, not the reposter;
    6. replies authored by the parent post's owner are dropped.

    Total: an empty result corpus is valid.
    """
    config = config or CleansingConfig()

    posts = list(corpus.posts.values())
    users = list(corpus.users.values())
    replies = list(corpus.replies.values())

    # (1) duplicates: keep the earliest (created_at, post_id) per signature.
    examined = len(posts)
    keeper: dict[tuple, Post] = {}
    for post in sorted(posts, key=lambda p: (p.created_at, p.post_id)):
        signature = (post.user_id, _normalized_text(post.text), tuple(sorted(post.urls)))
        keeper.setdefault(signature, post)
    kept_ids = {p.post_id for p in keeper.values()}
    posts = [p for p in posts if p.post_id in kept_ids]
    duplicates = RuleCount(examined, examined - len(posts))

    # (2) low-activity users: drop the user, their posts, and their replies.
    examined = len(users)
    post_counts: dict[str, int] = {}
    for post in posts:
        post_counts[post.user_id] = post_counts.get(post.user_id, 0) + 1
    dropped_users = {u.user_id for u in users if post_counts.get(u.user_id, 0) < config.min_posts}
    users = [u for u in users if u.user_id not in dropped_users]
    posts = [p for p in posts if p.user_id not in dropped_users]
    replies = [r for r in replies if r.author_user_id not in dropped_users]
    low_activity = RuleCount(examined, len(dropped_users))

    # (3) media URLs: strip blocklisted hosts, keep the post text.
    examined = sum(len(p.urls) for p in posts)
    stripped = 0
    next_posts = []
    for post in posts:
        kept = tuple(
            url for url in post.urls
            if not any(host_matches(host_of(url), blocked) for blocked in config.media_hosts)
        )
        stripped += len(post.urls) - len(kept)
        next_posts.append(post if len(kept) == len(post.urls) else dataclasses.replace(post, urls=kept))
    posts = next_posts
    media_urls = RuleCount(examined, stripped)

    # (4) non-English posts go, with their metadata and replies.
    examined = len(posts)
    if config.remove_non_english and provider is not None:
        posts = [p for p in posts if provider.is_english(p.text)]
    non_english = RuleCount(examined, examined - len(posts))

    # (5) repost metadata zeroing.
    examined = len(posts)
    zeroed = 0
    next_posts = []
    for post in posts:
        if post.is_retweet and (post.retweet_count or post.favorite_count or post.replies_count):
            zeroed += 1
            post = dataclasses.replace(post, retweet_count=0, favorite_count=0, replies_count=0)
        next_posts.append(post)
    posts = next_posts
    retweet_metadata = RuleCount(examined, zeroed)

    # Integrity cascade before the reply rule: drop replies whose parent is gone.
    surviving = {p.post_id for p in posts}
    post_author = {p.post_id: p.user_id for p in posts}
    replies = [r for r in replies if r.parent_post_id in surviving]

    # (6) owner replies.
    examined = len(replies)
    replies = [r for r in replies if r.author_user_id != post_author[r.parent_post_id]]
    owner_replies = RuleCount(examined, examined - len(replies))

    report = CleansingReport(
        duplicates=duplicates,
        low_activity_users=low_activity,
        media_urls=media_urls,
        non_english=non_english,
        retweet_metadata=retweet_metadata,
        owner_replies=owner_replies,
    )
    return Corpus(users, posts, replies), report


# ---------------------------------------------------------------------------
# Time partitioning
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WindowSpec:
    """How many trailing calendar periods to score, ending at ``window_end``."""

    chunks: int = 6
    period: str = "month"
    window_end: datetime | None = None

    def __post_init__(self) -> None:
        if self.chunks < 1:
            raise ConfigError(f"chunk count must be >= 1, got {self.chunks}")
        if self.period not in PERIODS:
            raise ConfigError(f"period must be one of {PERIODS}, got {self.period!r}")
        if self.window_end is not None:
            object.__setattr__(self, "window_end", _require_utc(self.window_end, "window_end"))


@dataclass(frozen=True)
class TimeChunk:
    """One half-open [period_start, period_end) slice of the corpus.

    Index 1 is the oldest chunk in the window.
    """

    index: int
    period_start: datetime
    period_end: datetime
    posts: tuple[Post, ...]
    replies: tuple[Reply, ...]


def _period_floor(ts: datetime, period: str) -> datetime:
    ts = ts.astimezone(timezone.utc)
    if period == "month":
        return ts.replace(day=1, hour=0, minute=0, second=0, microsecond=0)
    if period == "week":  # ISO weeks, Monday 00:00 UTC
        midnight = ts.replace(hour=0, minute=0, second=0, microsecond=0)
        return midnight - timedelta(days=midnight.weekday())
    return ts.replace(hour=0, minute=0, second=0, microsecond=0)


def _period_shift(start: datetime, period: str, steps: int) -> datetime:
    if period == "month":
        total = start.year * 12 + (start.month - 1) + steps
        return start.replace(year=total // 12, month=total % 12 + 1)
    return start + timedelta(days=(7 if period == "week" else 1) * steps)


def partition(corpus: Corpus, window: WindowSpec) -> list[TimeChunk]:
    """Slice posts and replies into the window's chunks; older records drop out.

    Chunks are contiguous calendar periods. The newest chunk is the period
    containing ``window_end`` (default: the newest post's timestamp); a
    record exactly at a period boundary belongs to the later period.
    """
    window_end = window.window_end or corpus.newest_post_time()
    if window_end is None:
        raise ConfigError("cannot partition: corpus has no posts and no window_end was given")

    last_start = _period_floor(window_end, window.period)
    first_start = _period_shift(last_start, window.period, -(window.chunks - 1))
    boundaries = [
        _period_shift(first_start, window.period, i) for i in range(window.chunks + 1)
    ]

    def bucket(ts: datetime) -> int | None:
        if ts < boundaries[0] or ts >= boundaries[-1]:
            return None
        if window.period == "month":
            months = (ts.year - boundaries[0].year) * 12 + ts.month - boundaries[0].month
            return months
        days = (ts - boundaries[0]) // timedelta(days=1)
        return int(days // (7 if window.period == "week" else 1))

    post_buckets: list[list[Post]] = [[] for _ in range(window.chunks)]
    for post in corpus.posts.values():
        idx = bucket(post.created_at)
        if idx is not None:
            post_buckets[idx].append(post)
    reply_buckets: list[list[Reply]] = [[] for _ in range(window.chunks)]
    for reply in corpus.replies.values():
        idx = bucket(reply.created_at)
        if idx is not None:
            reply_buckets[idx].append(reply)

    chunks = []
    for i in range(window.chunks):
        chunks.append(TimeChunk(
            index=i + 1,
            period_start=boundaries[i],
            period_end=boundaries[i + 1],
            posts=tuple(sorted(post_buckets[i], key=lambda p: (p.created_at, p.post_id))),
            replies=tuple(sorted(reply_buckets[i], key=lambda r: (r.created_at, r.reply_id))),
        ))
    return chunks
