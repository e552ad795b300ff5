"""End-to-end pipeline driver and file exports.

Stages run in a fixed order (ingest, cleanse, partition, score, rank) and
write their artifacts between stages so any stage can be re-run or
inspected on its own. All outputs are plain CSV/JSON.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from .config import AppConfig, config_to_json
from .corpus import (
    CleansingReport,
    Corpus,
    WindowSpec,
    cleanse,
    format_utc,
    ingest_dir,
    partition,
    write_corpus,
)
from .credibility import SimilarityPenalties, WindowScores, score_chunks, trust_level
from .errors import InputError
from .matrix import DomainMatrix
from .semantics import LexiconSemanticsProvider, SemanticsProvider


def _slug(label: str) -> str:
    return "".join(ch if ch.isalnum() else "_" for ch in label.lower()).strip("_")


def build_provider(config: AppConfig, resolver=None) -> LexiconSemanticsProvider:
    """Construct the reference provider honoring any custom data files."""
    lexicon = None
    if config.lexicon_file:
        with open(config.lexicon_file, encoding="utf-8") as fh:
            lexicon = json.load(fh)
    sentiment = None
    if config.sentiment_lexicon_file:
        with open(config.sentiment_lexicon_file, encoding="utf-8") as fh:
            sentiment = json.load(fh)
    return LexiconSemanticsProvider(
        registry=config.credibility.registry(),
        domain_lexicon=lexicon,
        sentiment_lexicon=sentiment,
        resolver=resolver,
    )


# ---------------------------------------------------------------------------
# Writers
# ---------------------------------------------------------------------------

def write_matrix_csv(matrix, path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["user_id", "domain", "value"])
        for (user, domain), value in matrix.items():
            writer.writerow([user, domain, repr(value)])


def write_matrix_json(matrix, path: Path) -> None:
    payload = {
        "name": matrix.name,
        "chunk": matrix.chunk_index,
        "entries": [
            {"user_id": user, "domain": domain, "value": value}
            for (user, domain), value in matrix.items()
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def write_scores(scores: WindowScores, out_dir: str | Path) -> None:
    """Write every named matrix, penalties, trust levels, and rankings."""
    out = Path(out_dir)
    matrices_dir = out / "matrices"
    matrices_dir.mkdir(parents=True, exist_ok=True)

    for cs in scores.chunks:
        for name, matrix in cs.named_matrices().items():
            stem = f"chunk{cs.chunk.index:02d}_{name}"
            write_matrix_csv(matrix, matrices_dir / f"{stem}.csv")
            write_matrix_json(matrix, matrices_dir / f"{stem}.json")
    write_matrix_csv(scores.tc, matrices_dir / "window_TC.csv")
    write_matrix_json(scores.tc, matrices_dir / "window_TC.json")
    write_matrix_csv(scores.tc_prime, matrices_dir / "window_TC_prime.csv")
    write_matrix_json(scores.tc_prime, matrices_dir / "window_TC_prime.json")

    with open(out / "penalties.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([
            "user_id", "twt_sim", "url_sim", "words", "distinct_words",
            "urls", "distinct_urls", "distinct_hosts",
        ])
        for user in sorted(scores.window_penalties):
            p = scores.window_penalties[user]
            writer.writerow([
                user, repr(p.twt_sim), repr(p.url_sim), p.word_count,
                p.distinct_word_count, p.url_count, p.distinct_url_count,
                p.distinct_host_count,
            ])

    with open(out / "trust_levels.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["user_id", "domain", "tc", "tc_scaled", "level", "stars", "semantics"])
        scored = set(scores.scored_users)
        for user in sorted(scores.profiles):
            for domain in scores.domains:
                if user in scored:
                    level = trust_level(scores.tc_prime.get(user, domain))
                    writer.writerow([
                        user, domain,
                        repr(scores.tc.get(user, domain)),
                        repr(scores.tc_prime.get(user, domain)),
                        level.level, level.stars, level.semantics,
                    ])
                else:
                    level = trust_level(None)
                    writer.writerow([user, domain, "", "", level.level, level.stars,
                                     level.semantics])

    chunk_rows = []
    for cs in scores.chunks:
        chunk_rows.append({
            "index": cs.chunk.index,
            "period_start": format_utc(cs.chunk.period_start),
            "period_end": format_utc(cs.chunk.period_end),
            "posts": len(cs.chunk.posts),
            "replies": len(cs.chunk.replies),
            "active_users": len(cs.active_users),
            "rankable_users": len(cs.rankable_users),
        })
    summary = {
        "chunks": chunk_rows,
        "scored_users": len(scores.scored_users),
        "unrankable_users": len(scores.unrankable_users),
        "domains": list(scores.domains),
        "config": config_to_json(scores.config) if scores.config else None,
    }
    with open(out / "score_summary.json", "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")


def write_rankings(scores: WindowScores, out_dir: str | Path, top: int | None = None) -> list[Path]:
    out = Path(out_dir)
    rankings_dir = out / "rankings"
    rankings_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for domain in scores.domains:
        path = rankings_dir / f"{_slug(domain)}.csv"
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["rank", "user_id", "handle", "tc", "tc_scaled", "level", "stars"])
            for row in scores.rank_domain(domain, top):
                writer.writerow([
                    row.rank, row.user_id, row.handle,
                    repr(row.tc), repr(row.tc_scaled), row.level, row.stars,
                ])
        written.append(path)
    return written


def write_ranking_method_csv(
    scores: WindowScores, method: str, path: str | Path, top: int = 150
) -> None:
    """Export the engine's own rankings in the benchmark input format."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["method", "domain", "rank", "user_id"])
        for domain in scores.domains:
            for row in scores.rank_domain(domain, top):
                writer.writerow([method, domain, row.rank, row.user_id])


# ---------------------------------------------------------------------------
# Full pipeline
# ---------------------------------------------------------------------------

@dataclass
class PipelineRun:
    output_dir: Path
    stages: list[dict] = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "output_dir": str(self.output_dir),
            "stages": self.stages,
            "counts": self.counts,
        }


def run_pipeline(
    input_dir: str | Path,
    output_dir: str | Path,
    config: AppConfig | None = None,
    provider: SemanticsProvider | None = None,
) -> tuple[PipelineRun, WindowScores]:
    """ingest -> cleanse -> partition -> score -> rank, with stage artifacts.

    Later stages consume only the artifacts of earlier ones; every stage
    leaves its outputs under ``output_dir``.
    """
    config = config or AppConfig()
    provider = provider or build_provider(config)
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    run = PipelineRun(output_dir=out)

    def timed(name: str, fn):
        start = time.perf_counter()
        result = fn()
        run.stages.append({"name": name, "seconds": round(time.perf_counter() - start, 6)})
        return result

    corpus, diagnostics = timed("ingest", lambda: ingest_dir(input_dir))
    with open(out / "ingest_report.json", "w", encoding="utf-8") as fh:
        json.dump({
            "accepted": corpus.counts(),
            "rejected": [d.to_json() for d in diagnostics],
        }, fh, indent=2)
        fh.write("\n")

    def do_cleanse() -> tuple[Corpus, CleansingReport]:
        return cleanse(corpus, config.cleansing, provider)

    cleansed, report = timed("cleanse", do_cleanse)
    corpus_dir = out / "corpus"
    write_corpus(cleansed, corpus_dir)
    with open(out / "cleansing_report.json", "w", encoding="utf-8") as fh:
        json.dump(report.to_json(), fh, indent=2)
        fh.write("\n")

    spec = WindowSpec(
        chunks=config.credibility.window,
        period=config.credibility.period,
        window_end=config.credibility.window_end,
    )
    chunks = timed("partition", lambda: partition(cleansed, spec))
    scores = timed("score", lambda: score_chunks(chunks, cleansed, provider, config.credibility))
    write_scores(scores, out)
    timed("rank", lambda: write_rankings(scores, out))

    run.counts = {
        "ingested": corpus.counts(),
        "cleansed": cleansed.counts(),
        "chunks": len(chunks),
        "scored_users": len(scores.scored_users),
        "unrankable_users": len(scores.unrankable_users),
    }
    with open(out / "run_summary.json", "w", encoding="utf-8") as fh:
        json.dump(run.to_json(), fh, indent=2)
        fh.write("\n")
    return run, scores


def load_scored_corpus(score_dir: str | Path) -> Corpus:
    """Reload the cleansed corpus that a pipeline run scored."""
    corpus_dir = Path(score_dir) / "corpus"
    if not corpus_dir.is_dir():
        raise InputError(f"no corpus directory under {score_dir}")
    corpus, _ = ingest_dir(corpus_dir)
    return corpus


def _read_matrix_csv(path: Path, name: str) -> DomainMatrix:
    if not path.is_file():
        raise InputError(f"missing matrix export: {path}")
    matrix = DomainMatrix(name)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        next(reader, None)  # header
        for row in reader:
            if row:
                matrix.set(row[0], row[1], float(row[2]))
    return matrix


def load_scores(score_dir: str | Path) -> WindowScores:
    """Rebuild a queryable window-score view from a score stage's artifacts.

    Enough for ranking and anomaly queries; per-chunk matrices stay on disk.
    """
    score_dir = Path(score_dir)
    corpus = load_scored_corpus(score_dir)
    tc = _read_matrix_csv(score_dir / "matrices" / "window_TC.csv", "TC")
    tc_prime = _read_matrix_csv(score_dir / "matrices" / "window_TC_prime.csv", "TC_prime")

    summary_path = score_dir / "score_summary.json"
    if not summary_path.is_file():
        raise InputError(f"missing score summary: {summary_path}")
    with open(summary_path, encoding="utf-8") as fh:
        summary = json.load(fh)
    domains = tuple(summary["domains"])

    penalties_path = score_dir / "penalties.csv"
    if not penalties_path.is_file():
        raise InputError(f"missing penalties export: {penalties_path}")
    window_penalties = {}
    with open(penalties_path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        next(reader, None)
        for row in reader:
            if not row:
                continue
            window_penalties[row[0]] = SimilarityPenalties(
                twt_sim=float(row[1]), url_sim=float(row[2]),
                word_count=int(row[3]), distinct_word_count=int(row[4]),
                url_count=int(row[5]), distinct_url_count=int(row[6]),
                distinct_host_count=int(row[7]),
            )

    scored = tuple(tc_prime.users())
    scored_set = set(scored)
    unrankable = tuple(u for u in sorted(corpus.users) if u not in scored_set)
    return WindowScores(
        chunks=[],
        domains=domains,
        scored_users=scored,
        unrankable_users=unrankable,
        tc=tc,
        tc_prime=tc_prime,
        window_penalties=window_penalties,
        profiles=corpus.users,
        config=None,
    )
