"""Command-line interface.

Subcommands mirror the pipeline stages (ingest, cleanse, score, rank,
anomalies, eval, synth) plus `pipeline` to run everything in order.
Failures exit nonzero with one machine-parsable JSON line on stderr:
exit 2 for configuration problems, 3 for input problems, 4 for internal
invariant violations.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .anomaly import (
    AnomalyLabelSet,
    AnomalyQuery,
    precision_at_cutoffs,
    query_anomalies,
)
from .config import AppConfig, AttributeWeights, load_config
from .corpus import CleansingConfig, WindowSpec, cleanse, ingest_dir, partition, write_corpus
from .credibility import score_chunks
from .errors import ConfigError, CredRankError, InputError, InvariantError
from .evaluation import GroundTruth, load_method_rankings, run_benchmark
from .pipeline import (
    build_provider,
    load_scores,
    run_pipeline,
    write_corpus as _write_corpus,  # noqa: F401  (re-export for scripts)
    write_rankings,
    write_scores,
)
from .synth import SyntheticSpec, generate_synthetic

logger = logging.getLogger("credrank")

CRITERION_ALIASES = {
    "twt": "very_untrustworthy_low_twt_sim",
    "url": "very_untrustworthy_low_url_sim",
    "indegree": "low_in_degree",
}

EXIT_CONFIG = 2
EXIT_INPUT = 3
EXIT_INVARIANT = 4


def _fail(kind: str, message: str, code: int) -> int:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)
    return code


def _load_app_config(args) -> AppConfig:
    path = getattr(args, "config", None) or getattr(args, "global_config", None)
    return load_config(path)


def _apply_score_overrides(config: AppConfig, args) -> AppConfig:
    cred = config.credibility
    changes = {}
    if args.rho is not None:
        changes["rho"] = args.rho
    if args.window is not None:
        changes["window"] = args.window
    if args.period is not None:
        changes["period"] = args.period
    if args.log_base is not None:
        changes["log_base"] = args.log_base
    if args.weights is not None:
        parts = args.weights.split(",")
        changes["weights"] = AttributeWeights.from_values(parts)
    if changes:
        import dataclasses
        cred = dataclasses.replace(cred, **changes)
        config = dataclasses.replace(config, credibility=cred)
    return config


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------

def cmd_ingest(args) -> int:
    for name, path in (("users", args.users), ("posts", args.posts), ("replies", args.replies)):
        if not Path(path).is_file():
            raise InputError(f"missing {name} file: {path}")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    streams = tuple(Path(p).read_text("utf-8").splitlines()
                    for p in (args.users, args.posts, args.replies))
    from .corpus import ingest
    corpus, diagnostics = ingest(*streams)
    write_corpus(corpus, out)
    with open(out / "ingest_report.json", "w", encoding="utf-8") as fh:
        json.dump({
            "accepted": corpus.counts(),
            "rejected": [d.to_json() for d in diagnostics],
        }, fh, indent=2)
        fh.write("\n")
    if not args.quiet:
        print(json.dumps({"accepted": corpus.counts(), "rejected": len(diagnostics)}))
    return 0


def cmd_cleanse(args) -> int:
    config = _load_app_config(args)
    cleansing = config.cleansing
    import dataclasses
    if args.min_posts is not None:
        cleansing = dataclasses.replace(cleansing, min_posts=args.min_posts)
    if args.media_blocklist is not None:
        path = Path(args.media_blocklist)
        if not path.is_file():
            raise InputError(f"missing media blocklist file: {path}")
        hosts = []
        for line in path.read_text("utf-8").splitlines():
            host = line.strip().lower()
            if host and not host.startswith("#"):
                hosts.append(host)
        cleansing = dataclasses.replace(cleansing, media_hosts=tuple(hosts))
    provider = build_provider(config)
    corpus, _ = ingest_dir(args.in_dir)
    cleansed, report = cleanse(corpus, cleansing, provider)
    out = Path(args.out)
    write_corpus(cleansed, out)
    with open(out / "cleansing_report.json", "w", encoding="utf-8") as fh:
        json.dump(report.to_json(), fh, indent=2)
        fh.write("\n")
    if not args.quiet:
        print(json.dumps({"before": corpus.counts(), "after": cleansed.counts()}))
    return 0


def cmd_score(args) -> int:
    config = _apply_score_overrides(_load_app_config(args), args)
    provider = build_provider(config)
    corpus, _ = ingest_dir(args.in_dir)
    spec = WindowSpec(
        chunks=config.credibility.window,
        period=config.credibility.period,
        window_end=config.credibility.window_end,
    )
    chunks = partition(corpus, spec)
    scores = score_chunks(chunks, corpus, provider, config.credibility)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_corpus(corpus, out / "corpus")
    write_scores(scores, out)
    write_rankings(scores, out)
    if not args.quiet:
        print(json.dumps({
            "scored_users": len(scores.scored_users),
            "unrankable_users": len(scores.unrankable_users),
            "chunks": len(scores.chunks),
        }))
    return 0


def cmd_rank(args) -> int:
    scores = load_scores(args.in_dir)
    rows = scores.rank_domain(args.domain, args.top)
    if args.format == "json":
        print(json.dumps([{
            "rank": r.rank, "user_id": r.user_id, "handle": r.handle,
            "tc": r.tc, "tc_scaled": r.tc_scaled, "level": r.level, "stars": r.stars,
        } for r in rows]))
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(["rank", "user_id", "handle", "tc", "tc_scaled", "level", "stars"])
        for r in rows:
            writer.writerow([r.rank, r.user_id, r.handle, repr(r.tc), repr(r.tc_scaled),
                             r.level, r.stars])
    return 0


def cmd_anomalies(args) -> int:
    scores = load_scores(args.in_dir)
    criterion = CRITERION_ALIASES.get(args.criterion, args.criterion)
    query = AnomalyQuery(criterion=criterion, top_k=args.top)
    results = query_anomalies(scores, query)
    if args.labels:
        labels = AnomalyLabelSet.load_csv(args.labels)
        retrieved = [user for user, _ in results]
        precision = precision_at_cutoffs(
            retrieved, labels,
            cutoffs=tuple(k for k in (10, 20, 30, 40, 50) if k <= max(args.top, 10)),
        )
        print(json.dumps({
            "criterion": criterion,
            "results": [{"rank": i + 1, "user_id": u, "criterion_value": v}
                        for i, (u, v) in enumerate(results)],
            "precision": precision,
        }))
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(["rank", "user_id", "criterion_value"])
        for i, (user, value) in enumerate(results, start=1):
            writer.writerow([i, user, repr(value)])
    return 0


def cmd_eval(args) -> int:
    truth = GroundTruth.load(args.truth)
    methods = []
    for path in args.rankings:
        methods.extend(load_method_rankings(path))
    mode = "strict" if args.strict_paper_metrics else "default"
    report = run_benchmark(methods, truth, q=args.q, recall_mode=mode)
    if args.format == "json":
        print(json.dumps(report.to_json()))
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer)
        for row in report.to_csv_rows():
            writer.writerow(row)
        sys.stdout.write(buffer.getvalue())
    return 0


def cmd_synth(args) -> int:
    if args.spec:
        spec = SyntheticSpec.from_json(args.spec)
        if args.seed is not None:
            import dataclasses
            spec = dataclasses.replace(spec, seed=args.seed)
    else:
        spec = SyntheticSpec(seed=args.seed if args.seed is not None else 42)
    result = generate_synthetic(spec, args.out)
    if not args.quiet:
        print(json.dumps({
            "out_dir": str(result.out_dir),
            "users": result.users,
            "posts": result.posts,
            "replies": result.replies,
            "roles": result.roles,
        }))
    return 0


def cmd_pipeline(args) -> int:
    config = _load_app_config(args)
    run, scores = run_pipeline(args.in_dir, args.out, config)
    if not args.quiet:
        print(json.dumps(run.to_json()))
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="credrank",
        description="Domain-based credibility ranking over social-post corpora.",
    )
    parser.add_argument("--version", action="version", version=f"credrank {__version__}")
    parser.add_argument("--config", dest="global_config", metavar="F",
                        help="JSON config file applied to every subcommand")
    parser.add_argument("--quiet", action="store_true", help="suppress informational output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="load raw JSONL into a validated corpus")
    p.add_argument("--users", required=True, metavar="F")
    p.add_argument("--posts", required=True, metavar="F")
    p.add_argument("--replies", required=True, metavar="F")
    p.add_argument("--out", required=True, metavar="DIR")
    p.set_defaults(handler=cmd_ingest)

    p = sub.add_parser("cleanse", help="apply the cleansing rules to a corpus directory")
    p.add_argument("--in", dest="in_dir", required=True, metavar="DIR")
    p.add_argument("--config", metavar="F")
    p.add_argument("--out", required=True, metavar="DIR")
    p.add_argument("--min-posts", type=int, metavar="N")
    p.add_argument("--media-blocklist", metavar="F")
    p.set_defaults(handler=cmd_cleanse)

    p = sub.add_parser("score", help="partition a cleansed corpus and score the window")
    p.add_argument("--in", dest="in_dir", required=True, metavar="DIR")
    p.add_argument("--config", metavar="F")
    p.add_argument("--out", required=True, metavar="DIR")
    p.add_argument("--rho", type=float, metavar="X")
    p.add_argument("--window", type=int, metavar="I")
    p.add_argument("--period", choices=("month", "week", "day"))
    p.add_argument("--weights", metavar="a,b,c,d,e,f")
    p.add_argument("--log-base", type=float, metavar="X")
    p.set_defaults(handler=cmd_score)

    p = sub.add_parser("rank", help="print one domain's credibility ranking")
    p.add_argument("--in", dest="in_dir", required=True, metavar="DIR")
    p.add_argument("--domain", required=True, metavar="NAME")
    p.add_argument("--top", type=int, default=None, metavar="Q")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(handler=cmd_rank)

    p = sub.add_parser("anomalies", help="retrieve candidate anomalous users")
    p.add_argument("--in", dest="in_dir", required=True, metavar="DIR")
    p.add_argument("--criterion", required=True,
                   choices=tuple(CRITERION_ALIASES) + tuple(CRITERION_ALIASES.values()))
    p.add_argument("--top", type=int, required=True, metavar="K")
    p.add_argument("--labels", metavar="F")
    p.set_defaults(handler=cmd_anomalies)

    p = sub.add_parser("eval", help="score method rankings against a ground truth")
    p.add_argument("--truth", required=True, metavar="F")
    p.add_argument("--rankings", required=True, nargs="+", metavar="F")
    p.add_argument("--q", type=int, default=150)
    p.add_argument("--strict-paper-metrics", action="store_true",
                   help="use the retrieved-count recall denominator")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("synth", help="generate a seeded synthetic corpus with planted roles")
    p.add_argument("--seed", type=int, metavar="N")
    p.add_argument("--spec", metavar="F")
    p.add_argument("--out", required=True, metavar="DIR")
    p.set_defaults(handler=cmd_synth)

    p = sub.add_parser("pipeline", help="run ingest, cleanse, partition, score, rank")
    p.add_argument("--in", dest="in_dir", required=True, metavar="DIR")
    p.add_argument("--config", metavar="F")
    p.add_argument("--out", required=True, metavar="DIR")
    p.set_defaults(handler=cmd_pipeline)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.ERROR if args.quiet else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except ConfigError as exc:
        return _fail("config", str(exc), EXIT_CONFIG)
    except InputError as exc:
        return _fail("input", str(exc), EXIT_INPUT)
    except InvariantError as exc:
        return _fail("invariant", str(exc), EXIT_INVARIANT)
    except CredRankError as exc:
        return _fail("error", str(exc), EXIT_INPUT)
    except OSError as exc:
        return _fail("input", str(exc), EXIT_INPUT)
    except json.JSONDecodeError as exc:
        return _fail("input", f"invalid JSON: {exc}", EXIT_INPUT)


if __name__ == "__main__":
    sys.exit(main())
