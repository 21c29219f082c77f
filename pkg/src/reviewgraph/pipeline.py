"""End-to-end summarization pipeline: reviews -> tagged sentence communities."""

from __future__ import annotations

from dataclasses import dataclass

from .embedding import EmbeddingProvider
from .errors import UndefinedModularityError
from .graph import Partition, Ref, SimilarityGraph, build_graph, louvain
from .ranking import (
    DEFAULT_DAMPING,
    CommunityTag,
    CorrelationScores,
    tag_communities,
    textrank,
)
from .segmentation import DEFAULT_MIN_TOKENS, Review, Sentence, segment_review
from .similarity import pairwise_similarities

DEFAULT_TAU = 0.8


@dataclass(frozen=True)
class SummaryResult:
    sentences: list[Sentence]
    graph: SimilarityGraph
    partition: Partition
    scores: CorrelationScores
    tags: list[CommunityTag]

    @property
    def modularity(self) -> float:
        return self.partition.modularity

    def texts(self) -> dict[Ref, str]:
        return {s.ref: s.text for s in self.sentences}


def segment_corpus(reviews: list[Review],
                   min_tokens: int = DEFAULT_MIN_TOKENS) -> list[Sentence]:
    """Split and merge every review; (review_index, sentence_index) stays unique."""
    sentences: list[Sentence] = []
    for review in reviews:
        sentences.extend(segment_review(review, min_tokens))
    return sentences


def summarize_sentences(sentences: list[Sentence], provider: EmbeddingProvider,
                        tau: float = DEFAULT_TAU, damping: float = DEFAULT_DAMPING,
                        seed: int = 42, workers: int | None = None) -> SummaryResult:
    """Embed, score pairs, threshold, cluster and tag a sentence list."""
    if len(sentences) < 2:
        raise UndefinedModularityError(
            f"need at least 2 sentences to build a graph, got {len(sentences)}")
    embeddings = provider.embed(sentences)
    scores = pairwise_similarities(embeddings, workers=workers)
    graph = build_graph(scores, tau)
    partition = louvain(graph, seed)
    ranks = textrank(graph, damping)
    texts = {s.ref: s.text for s in sentences}
    tags = tag_communities(graph, partition, ranks, texts)
    return SummaryResult(sentences, graph, partition, ranks, tags)


def summarize_reviews(reviews: list[Review], provider: EmbeddingProvider,
                      tau: float = DEFAULT_TAU, min_tokens: int = DEFAULT_MIN_TOKENS,
                      damping: float = DEFAULT_DAMPING, seed: int = 42,
                      workers: int | None = None) -> SummaryResult:
    """Full pipeline from raw reviews."""
    sentences = segment_corpus(reviews, min_tokens)
    return summarize_sentences(sentences, provider, tau=tau, damping=damping,
                               seed=seed, workers=workers)
