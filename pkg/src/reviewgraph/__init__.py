"""reviewgraph: review summarization and distinct-answer extraction.

Sentences from a review corpus are embedded token-by-token, compared with
a sliding-window cosine, linked into a thresholded similarity graph,
clustered by greedy modularity maximization and tagged with their most
central member.  The same machinery clusters question-answering spans
into distinct answers.
"""

from .embedding import (
    HashEmbedder,
    RemoteEmbedder,
    SentenceEmbedding,
    hash_embed,
)
from .graph import (
    Partition,
    SimilarityGraph,
    build_graph,
    graph_json_dict,
    louvain,
    modularity,
    to_dot,
)
from .pipeline import (
    SummaryResult,
    segment_corpus,
    summarize_reviews,
    summarize_sentences,
)
from .qa import (
    Answer,
    AnswerCluster,
    DistinctAnswerSet,
    FixtureAnswerProvider,
    QuestionGroup,
    RemoteAnswerProvider,
    ask,
    cluster_answers,
    collect_answers,
    filter_answers,
    load_question_groups,
)
from .ranking import CommunityTag, CorrelationScores, tag_communities, textrank
from .segmentation import (
    Review,
    Sentence,
    load_reviews_jsonl,
    merge_short,
    segment_review,
    split_review,
    tokenize,
)
from .similarity import (
    SimilarityScore,
    cosine,
    flatten,
    pairwise_similarities,
    sentence_similarity,
)
from .synthetic import synthetic_corpus

__version__ = "0.1.0"

__all__ = [
    "Answer",
    "AnswerCluster",
    "CommunityTag",
    "CorrelationScores",
    "DistinctAnswerSet",
    "FixtureAnswerProvider",
    "HashEmbedder",
    "Partition",
    "QuestionGroup",
    "RemoteAnswerProvider",
    "RemoteEmbedder",
    "Review",
    "Sentence",
    "SentenceEmbedding",
    "SimilarityGraph",
    "SimilarityScore",
    "SummaryResult",
    "ask",
    "build_graph",
    "cluster_answers",
    "collect_answers",
    "cosine",
    "filter_answers",
    "flatten",
    "graph_json_dict",
    "hash_embed",
    "load_question_groups",
    "load_reviews_jsonl",
    "louvain",
    "merge_short",
    "modularity",
    "pairwise_similarities",
    "segment_corpus",
    "segment_review",
    "sentence_similarity",
    "split_review",
    "summarize_reviews",
    "summarize_sentences",
    "synthetic_corpus",
    "tag_communities",
    "textrank",
    "to_dot",
    "tokenize",
]
