"""Seeded synthetic corpus generator with planted user roles.

Produces users/posts/replies JSONL plus a role labels CSV and a graded
influencer ground-truth file, so the whole pipeline can be exercised
end-to-end without any crawled data:

- influencers: many distinct on-topic posts in one home domain, unique
  URLs, heavy engagement, mostly positive replies;
- spammers: near-duplicate low-vocabulary posts (each text still unique by
  one token so they survive deduplication), one endlessly repeated URL,
  no engagement, profiles that follow thousands and are followed by few;
- generic users: moderate mixed-topic activity with light engagement.

Generation is fully deterministic for a given spec: one seeded RNG, fixed
iteration order, no wall-clock reads.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from pathlib import Path

from .corpus import _period_floor, _period_shift, format_utc, parse_utc
from .errors import ConfigError
from .semantics import _default_domain_lexicon, _default_sentiment_lexicon

import random

DEFAULT_WINDOW_END = datetime(2015, 4, 15, 12, 0, tzinfo=timezone.utc)
DEFAULT_INFLUENCER_DOMAINS = (
    "sports",
    "education",
    "computing and technology",
    "arts and entertainment",
)


def _letters(number: int) -> str:
    """Digits of a number spelled as letters; keeps generated tokens out of
    every lexicon (no real word is shaped like 'u' + a..j)."""
    return "".join("abcdefghij"[int(ch)] for ch in str(number))


def _slug(label: str) -> str:
    return "".join(ch if ch.isalnum() else "_" for ch in label.lower()).strip("_")


@dataclass(frozen=True)
class SyntheticSpec:
    seed: int = 42
    chunks: int = 6
    period: str = "month"
    window_end: datetime = DEFAULT_WINDOW_END
    influencer_domains: tuple[str, ...] = DEFAULT_INFLUENCER_DOMAINS
    influencers_per_domain: int = 20
    spammers: int = 20
    generic_users: int = 100
    influencer_posts: tuple[int, int] = (18, 26)   # per chunk, inclusive range
    spammer_posts: tuple[int, int] = (10, 11)
    generic_posts: tuple[int, int] = (9, 14)
    replies_per_influencer_post: tuple[int, int] = (2, 5)
    positive_reply_rate: float = 0.85

    def __post_init__(self) -> None:
        if self.chunks < 1:
            raise ConfigError("chunks must be >= 1")
        if not 0.0 <= self.positive_reply_rate <= 1.0:
            raise ConfigError("positive_reply_rate must be in [0, 1]")
        object.__setattr__(self, "influencer_domains", tuple(self.influencer_domains))
        if isinstance(self.window_end, str):
            object.__setattr__(self, "window_end", parse_utc(self.window_end))

    @classmethod
    def from_json(cls, path: str | Path) -> "SyntheticSpec":
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise ConfigError(f"synthetic spec {path} must be a JSON object")
        kwargs = {}
        for fld in (
            "seed", "chunks", "period", "window_end", "influencer_domains",
            "influencers_per_domain", "spammers", "generic_users",
            "influencer_posts", "spammer_posts", "generic_posts",
            "replies_per_influencer_post", "positive_reply_rate",
        ):
            if fld in raw:
                value = raw[fld]
                if fld == "window_end":
                    value = parse_utc(value)
                elif fld.endswith(("_posts", "_post")) or fld == "replies_per_influencer_post":
                    value = tuple(value)
                elif fld == "influencer_domains":
                    value = tuple(value)
                kwargs[fld] = value
        unknown = sorted(set(raw) - set(kwargs))
        if unknown:
            raise ConfigError(f"unknown synthetic spec keys: {unknown}")
        return cls(**kwargs)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "chunks": self.chunks,
            "period": self.period,
            "window_end": format_utc(self.window_end),
            "influencer_domains": list(self.influencer_domains),
            "influencers_per_domain": self.influencers_per_domain,
            "spammers": self.spammers,
            "generic_users": self.generic_users,
            "influencer_posts": list(self.influencer_posts),
            "spammer_posts": list(self.spammer_posts),
            "generic_posts": list(self.generic_posts),
            "replies_per_influencer_post": list(self.replies_per_influencer_post),
            "positive_reply_rate": self.positive_reply_rate,
        }


@dataclass
class SynthResult:
    out_dir: Path
    users: int
    posts: int
    replies: int
    roles: dict[str, int] = field(default_factory=dict)


def generate_synthetic(spec: SyntheticSpec, out_dir: str | Path) -> SynthResult:
    """Write a planted-role corpus plus labels and ground truth to out_dir."""
    lexicon = _default_domain_lexicon()
    missing = [d for d in spec.influencer_domains if d not in lexicon]
    if missing:
        raise ConfigError(f"influencer domains lack lexicon entries: {missing}")
    sentiment = _default_sentiment_lexicon()
    positive_words = list(sentiment["positive"])
    negative_words = list(sentiment["negative"])
    generic_domains = sorted(lexicon)

    rng = random.Random(spec.seed)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    last_start = _period_floor(spec.window_end, spec.period)
    chunk_starts = [
        _period_shift(last_start, spec.period, -(spec.chunks - 1 - i))
        for i in range(spec.chunks)
    ]
    chunk_ends = [_period_shift(s, spec.period, 1) for s in chunk_starts]
    window_start = chunk_starts[0]

    filler_counter = 0

    def filler() -> str:
        nonlocal filler_counter
        filler_counter += 1
        return "u" + _letters(filler_counter)

    def moment(chunk_idx: int) -> datetime:
        # Leave a 2h margin so replies to late posts stay inside the window.
        span = (chunk_ends[chunk_idx] - chunk_starts[chunk_idx]).total_seconds() - 7200
        return chunk_starts[chunk_idx] + timedelta(seconds=rng.uniform(0, max(span, 1)))

    users: list[dict] = []
    labels: list[tuple[str, str]] = []
    roles: dict[str, str] = {}  # user_id -> influencer domain ('' otherwise)

    for domain in spec.influencer_domains:
        slug = _slug(domain)
        for i in range(spec.influencers_per_domain):
            uid = f"inf_{slug}_{i:02d}"
            users.append({
                "user_id": uid,
                "handle": f"{slug.title().replace('_', '')}Voice{i:02d}",
                "created_at": format_utc(
                    window_start - timedelta(days=rng.randint(730, 2190))
                ),
                "followers_count": rng.randint(5000, 60000),
                "friends_count": rng.randint(100, 1200),
                "bio": f"Talks about {domain} all day.",
            })
            labels.append((uid, "normal"))
            roles[uid] = domain
    for i in range(spec.spammers):
        uid = f"spam_{i:02d}"
        users.append({
            "user_id": uid,
            "handle": f"BargainBlast{i:02d}",
            "created_at": format_utc(window_start - timedelta(days=rng.randint(60, 200))),
            "followers_count": rng.randint(40, 150),
            "friends_count": rng.randint(2500, 6000),
            "bio": "offers offers offers",
        })
        labels.append((uid, "anomalous"))
        roles[uid] = ""
    generic_home: dict[str, str] = {}
    generic_skip_chunk: dict[str, int | None] = {}
    for i in range(spec.generic_users):
        uid = f"gen_{i:03d}"
        home = rng.choice(generic_domains)
        generic_home[uid] = home
        generic_skip_chunk[uid] = (
            rng.randrange(spec.chunks) if spec.chunks > 1 and rng.random() < 0.15 else None
        )
        users.append({
            "user_id": uid,
            "handle": f"Everyday{i:03d}",
            "created_at": format_utc(window_start - timedelta(days=rng.randint(365, 1460))),
            "followers_count": rng.randint(3, 900),
            "friends_count": rng.randint(50, 600),
            "bio": f"Mostly {home}.",
        })
        labels.append((uid, "normal"))
        roles[uid] = ""

    posts: list[dict] = []
    replies: list[dict] = []
    post_counter = 0
    reply_counter = 0
    ext_counter = 0

    def next_post_id() -> str:
        nonlocal post_counter
        post_counter += 1
        return f"p{post_counter:06d}"

    def emit_post(uid: str, when: datetime, text: str, urls: list[str],
                  retweets: int, favorites: int, reply_texts: list[str]) -> None:
        nonlocal reply_counter, ext_counter
        pid = next_post_id()
        posts.append({
            "post_id": pid,
            "user_id": uid,
            "created_at": format_utc(when),
            "text": text,
            "urls": urls,
            "retweet_count": retweets,
            "favorite_count": favorites,
            "replies_count": len(reply_texts),
            "is_retweet": False,
            "language": "en",
        })
        for reply_text in reply_texts:
            reply_counter += 1
            ext_counter += 1
            replies.append({
                "reply_id": f"r{reply_counter:06d}",
                "parent_post_id": pid,
                "author_user_id": f"ext_{_letters(ext_counter)}",
                "created_at": format_utc(when + timedelta(minutes=rng.randint(1, 90))),
                "text": reply_text,
            })

    def reply_text(positive: bool) -> str:
        pool = positive_words if positive else negative_words
        words = rng.sample(pool, rng.randint(2, 4))
        return " ".join(words + [filler()])

    # Influencers: focused vocabulary, unique URLs, strong engagement.
    for user in users:
        uid = user["user_id"]
        domain = roles.get(uid, "")
        if not domain:
            continue
        keywords = list(lexicon[domain])
        slug = _slug(domain)
        for chunk_idx in range(spec.chunks):
            for _ in range(rng.randint(*spec.influencer_posts)):
                words = rng.sample(keywords, rng.randint(4, 6))
                words += [filler() for _ in range(rng.randint(3, 5))]
                rng.shuffle(words)
                urls = []
                if rng.random() < 0.7:
                    urls.append(
                        f"https://{slug}-press-{_letters(post_counter + 1)}.example/story/{post_counter + 1}"
                    )
                n_replies = rng.randint(*spec.replies_per_influencer_post)
                texts = [
                    reply_text(rng.random() < spec.positive_reply_rate)
                    for _ in range(n_replies)
                ]
                emit_post(
                    uid, moment(chunk_idx), " ".join(words), urls,
                    retweets=rng.randint(20, 120), favorites=rng.randint(10, 90),
                    reply_texts=texts,
                )

    # Spammers: tiny vocabulary, one URL forever, no engagement.
    spam_index = 0
    for user in users:
        uid = user["user_id"]
        if not uid.startswith("spam_"):
            continue
        base_tokens = ["q" + _letters(spam_index * 4 + j + 1) for j in range(4)]
        spam_url = f"https://promo-{_letters(spam_index + 1)}.example/offer"
        spam_index += 1
        for chunk_idx in range(spec.chunks):
            for _ in range(rng.randint(*spec.spammer_posts)):
                words = rng.choices(base_tokens, k=11) + [filler()]
                rng.shuffle(words)
                emit_post(
                    uid, moment(chunk_idx), " ".join(words), [spam_url],
                    retweets=0, favorites=0, reply_texts=[],
                )

    # Generic users: home-domain chatter with light engagement.
    for user in users:
        uid = user["user_id"]
        if not uid.startswith("gen_"):
            continue
        home = generic_home[uid]
        home_keywords = list(lexicon[home])
        skip = generic_skip_chunk[uid]
        for chunk_idx in range(spec.chunks):
            if chunk_idx == skip:
                continue
            low, high = spec.generic_posts
            if skip is not None:
                low = max(low, 11)  # keep the post total above the cleansing bar
            for _ in range(rng.randint(low, high)):
                words = rng.sample(home_keywords, rng.randint(2, 3))
                if rng.random() < 0.3:
                    other = rng.choice(generic_domains)
                    words.append(rng.choice(lexicon[other]))
                words += [filler() for _ in range(rng.randint(2, 4))]
                rng.shuffle(words)
                urls = []
                if rng.random() < 0.3:
                    urls.append(
                        f"https://blog-{_letters(post_counter + 1)}.example/note/{post_counter + 1}"
                    )
                texts = []
                if rng.random() < 0.25:
                    texts = [reply_text(rng.random() < 0.6) for _ in range(rng.randint(1, 2))]
                emit_post(
                    uid, moment(chunk_idx), " ".join(words), urls,
                    retweets=rng.randint(0, 6), favorites=rng.randint(0, 6),
                    reply_texts=texts,
                )

    with open(out / "users.jsonl", "w", encoding="utf-8") as fh:
        for user in users:
            fh.write(json.dumps(user) + "\n")
    with open(out / "posts.jsonl", "w", encoding="utf-8") as fh:
        for post in posts:
            fh.write(json.dumps(post) + "\n")
    with open(out / "replies.jsonl", "w", encoding="utf-8") as fh:
        for reply in replies:
            fh.write(json.dumps(reply) + "\n")

    with open(out / "labels.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["user_id", "label"])
        for uid, label in labels:
            writer.writerow([uid, label])

    truth = {}
    for domain in spec.influencer_domains:
        entries = []
        for user in users:
            uid = user["user_id"]
            grade = 3 if roles.get(uid) == domain else 0
            entries.append({"user_id": uid, "grade": grade})
        truth[domain] = entries
    with open(out / "truth.json", "w", encoding="utf-8") as fh:
        json.dump(truth, fh, indent=2)
        fh.write("\n")

    manifest = {
        "spec": spec.to_json(),
        "counts": {"users": len(users), "posts": len(posts), "replies": len(replies)},
        "window": {
            "start": format_utc(window_start),
            "end": format_utc(chunk_ends[-1]),
            "chunks": spec.chunks,
            "period": spec.period,
        },
    }
    with open(out / "manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")

    role_counts = {
        "influencers": sum(1 for u in users if u["user_id"].startswith("inf_")),
        "spammers": sum(1 for u in users if u["user_id"].startswith("spam_")),
        "generic": sum(1 for u in users if u["user_id"].startswith("gen_")),
    }
    return SynthResult(
        out_dir=out,
        users=len(users),
        posts=len(posts),
        replies=len(replies),
        roles=role_counts,
    )
