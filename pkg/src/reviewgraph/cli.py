"""Command-line orchestration of the two pipelines.

Subcommands:

* ``summarize`` — cluster a review corpus into tagged sentence communities.
* ``extract``   — collect, filter and cluster answers for question groups.
* ``ask``       — answer one ad-hoc question, printing clusters to stdout.

Exit codes: 0 success; 2 unusable input or configuration; 3 the similarity
graph has no edges at the chosen threshold; 4 the answer provider failed.
Diagnostics go to stderr, data only to files or stdout.  Reports embed the
seed and are byte-identical across runs with identical inputs.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .embedding import DEFAULT_DIMENSION, EmbeddingProvider, HashEmbedder, RemoteEmbedder
from .errors import (
    ConfigError,
    ContractViolation,
    ProtocolError,
    ProviderFailureError,
    TransportError,
    UndefinedModularityError,
    UnusableReviewError,
)
from .graph import graph_json_dict, to_dot
from .pipeline import DEFAULT_TAU, summarize_reviews
from .qa import (
    AnswerProvider,
    DistinctAnswerSet,
    FixtureAnswerProvider,
    RemoteAnswerProvider,
    ask,
    cluster_answers,
    collect_answers,
    filter_answers,
    load_question_groups,
)
from .ranking import DEFAULT_DAMPING
from .segmentation import DEFAULT_MIN_TOKENS, Review, load_reviews_jsonl
from .serialize import dump_canonical, dumps_canonical

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NO_COMMUNITIES = 3
EXIT_PROVIDER = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reviewgraph",
        description="Summarize review corpora and extract distinct answers "
                    "over sentence-similarity graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", required=True, help="review corpus (JSON Lines)")
        p.add_argument("--tau", type=float, default=DEFAULT_TAU,
                       help="similarity threshold in (0,1) (default %(default)s)")
        p.add_argument("--min-tokens", type=int, default=DEFAULT_MIN_TOKENS,
                       help="merge sentences shorter than this (default %(default)s)")
        p.add_argument("--damping", type=float, default=DEFAULT_DAMPING,
                       help="correlation-score damping factor (default %(default)s)")
        p.add_argument("--seed", type=int, default=42,
                       help="clustering seed (default %(default)s)")
        p.add_argument("--dim", type=int, default=DEFAULT_DIMENSION,
                       help="embedding dimension (default %(default)s)")
        p.add_argument("--provider", choices=("hash", "remote"), default="hash",
                       help="embedding provider (default %(default)s)")
        p.add_argument("--endpoint", help="base URL of the remote model server")

    p_sum = sub.add_parser("summarize", help="cluster and tag review sentences")
    common(p_sum)
    p_sum.add_argument("--output", required=True, help="summary report path (JSON)")
    p_sum.add_argument("--export-graph", help="also write the graph in DOT format")

    p_ext = sub.add_parser("extract", help="extract distinct answers per question group")
    common(p_ext)
    p_ext.add_argument("--questions", required=True,
                       help="question-group config (JSON)")
    p_ext.add_argument("--answers",
                       help="recorded answer fixtures (JSON); required unless "
                            "--provider remote")
    p_ext.add_argument("--output", required=True, help="answers report path (JSON)")

    p_ask = sub.add_parser("ask", help="answer one question from the corpus")
    common(p_ask)
    p_ask.add_argument("--question", required=True, help="the question to ask")
    p_ask.add_argument("--answers",
                       help="recorded answer fixtures (JSON); required unless "
                            "--provider remote")
    p_ask.add_argument("--top-k", type=int, default=5,
                       help="clusters to report (default %(default)s)")
    return parser


def _validate_common(args) -> None:
    if not 0.0 < args.tau < 1.0:
        raise ConfigError(f"--tau must be in (0, 1), got {args.tau}")
    if args.min_tokens < 1:
        raise ConfigError(f"--min-tokens must be >= 1, got {args.min_tokens}")
    if not 0.0 < args.damping < 1.0:
        raise ConfigError(f"--damping must be in (0, 1), got {args.damping}")
    if args.dim < 8:
        raise ConfigError(f"--dim must be >= 8, got {args.dim}")
    if args.provider == "remote" and not args.endpoint:
        raise ConfigError("--provider remote requires --endpoint")


def _embedder(args) -> EmbeddingProvider:
    if args.provider == "remote":
        return RemoteEmbedder(args.endpoint, dimension=args.dim)
    return HashEmbedder(dimension=args.dim)


def _answer_provider(args, reviews: list[Review]) -> AnswerProvider:
    if args.provider == "remote":
        return RemoteAnswerProvider(args.endpoint)
    if not args.answers:
        raise ConfigError("--answers fixture file is required with --provider hash")
    return FixtureAnswerProvider(args.answers, reviews)


def _config_dict(args) -> dict:
    return {
        "tau": float(args.tau),
        "min_tokens": args.min_tokens,
        "damping": float(args.damping),
        "seed": args.seed,
        "dimension": args.dim,
        "provider": args.provider,
    }


def _answer_set_dict(result: DistinctAnswerSet) -> dict:
    return {
        "group_id": result.group_id,
        "status": "ok" if result.clusters else "no_answers",
        "cluster_count": len(result.clusters),
        "clusters": [
            {
                "tag": cluster.tag_text,
                "member_count": cluster.member_count,
                "member_review_ids": [a.review_id for a in cluster.members],
                "members": [
                    {
                        "review_id": a.review_id,
                        "question_used": a.question_used,
                        "text": a.text,
                        "confidence": a.confidence,
                    }
                    for a in cluster.members
                ],
            }
            for cluster in result.clusters
        ],
    }


def run_summarize(args) -> int:
    _validate_common(args)
    reviews = load_reviews_jsonl(args.input)
    if not reviews:
        raise UnusableReviewError(f"{args.input}: corpus is empty")
    result = summarize_reviews(
        reviews, _embedder(args), tau=args.tau, min_tokens=args.min_tokens,
        damping=args.damping, seed=args.seed)

    communities = result.partition.communities()
    texts = result.texts()
    isolated = set(result.graph.isolated_nodes())
    report_communities = []
    for tag in result.tags:
        members = communities[tag.community_id]
        report_communities.append({
            "id": tag.community_id,
            "tag": {
                "review_index": tag.tag_sentence[0],
                "sentence_index": tag.tag_sentence[1],
                "text": tag.tag_text,
            },
            "member_count": tag.member_count,
            "members": [
                {
                    "review_index": ref[0],
                    "sentence_index": ref[1],
                    "text": texts[ref],
                    "score": result.scores.score[ref],
                }
                for ref in members
            ],
        })
    isolated_entries = [
        {"review_index": ref[0], "sentence_index": ref[1], "text": texts[ref]}
        for ref in sorted(isolated)
    ]

    report = {
        "command": "summarize",
        "config": _config_dict(args),
        "modularity": result.modularity,
        "sentence_count": len(result.sentences),
        "community_count": len(report_communities),
        "communities": report_communities,
        "isolated_count": len(isolated_entries),
        "isolated": isolated_entries,
    }
    dump_canonical(report, args.output)
    if args.export_graph:
        Path(args.export_graph).write_text(to_dot(result.graph), encoding="utf-8")
        graph_path = Path(args.export_graph).with_suffix(".json")
        dump_canonical(graph_json_dict(result.graph), graph_path)
    print(f"wrote {args.output}: {len(report_communities)} communities, "
          f"{len(isolated_entries)} isolated sentences", file=sys.stderr)
    return EXIT_OK


def run_extract(args) -> int:
    _validate_common(args)
    reviews = load_reviews_jsonl(args.input)
    if not reviews:
        raise UnusableReviewError(f"{args.input}: corpus is empty")
    groups = load_question_groups(args.questions)
    provider = _answer_provider(args, reviews)
    embedder = _embedder(args)

    answers = filter_answers(collect_answers(reviews, groups, provider))
    by_group: dict[str, list] = {group.id: [] for group in groups}
    for answer in answers:
        by_group[answer.group_id].append(answer)

    group_reports = []
    for group in groups:
        group_answers = by_group[group.id]
        if group_answers:
            result = cluster_answers(group_answers, embedder, tau=args.tau,
                                     seed=args.seed, damping=args.damping)
        else:
            result = DistinctAnswerSet(group.id, ())
        entry = _answer_set_dict(result)
        entry["question"] = group.original
        group_reports.append(entry)

    report = {
        "command": "extract",
        "config": _config_dict(args),
        "groups": group_reports,
    }
    dump_canonical(report, args.output)
    print(f"wrote {args.output}: {len(group_reports)} question groups",
          file=sys.stderr)
    return EXIT_OK


def run_ask(args) -> int:
    _validate_common(args)
    if args.top_k < 1:
        raise ConfigError(f"--top-k must be >= 1, got {args.top_k}")
    reviews = load_reviews_jsonl(args.input)
    if not reviews:
        raise UnusableReviewError(f"{args.input}: corpus is empty")
    provider = _answer_provider(args, reviews)
    result = ask(args.question, reviews, provider, _embedder(args),
                 tau=args.tau, seed=args.seed, top_k=args.top_k,
                 damping=args.damping)
    payload = _answer_set_dict(result)
    payload["question"] = args.question
    payload["config"] = _config_dict(args)
    sys.stdout.write(dumps_canonical(payload))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"summarize": run_summarize, "extract": run_extract, "ask": run_ask}
    try:
        return handlers[args.command](args)
    except (ConfigError, ContractViolation, UnusableReviewError, FileNotFoundError,
            IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UndefinedModularityError:
        print("error: no communities above threshold, lower --tau", file=sys.stderr)
        return EXIT_NO_COMMUNITIES
    except (ProviderFailureError, TransportError, ProtocolError) as exc:
        print(f"error: provider failed: {exc}", file=sys.stderr)
        return EXIT_PROVIDER


if __name__ == "__main__":
    sys.exit(main())
