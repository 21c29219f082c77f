"""Distinct-answer extraction: fan questions over reviews, filter, cluster.

A single extractive question-answering pass returns at most one span per
(question, review), so each customer question is widened into a group of
hand-written paraphrases.  Every paraphrase is asked against every review;
the surviving spans are treated as small sentences and pushed through the
same embed / threshold / cluster / tag pipeline used for summaries.  Each
resulting community is one *distinct answer*, its size counting how many
reviews back it.

Answer providers are pluggable: a recorded fixture file for offline runs
and an HTTP client (``POST /answer``) for a live model sidecar.
"""

from __future__ import annotations

import json
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import requests

from .embedding import EmbeddingProvider
from .errors import (
    ContractViolation,
    ProtocolError,
    ProviderFailureError,
    TransportError,
)
from .graph import build_graph, louvain
from .pipeline import DEFAULT_TAU
from .ranking import DEFAULT_DAMPING, textrank
from .segmentation import Review, Sentence, tokenize
from .similarity import pairwise_similarities

# Separator used in fixture-file keys: "<question>␟<review_id>".
FIXTURE_KEY_SEP = "␟"

DEFAULT_MAX_IN_FLIGHT = 8


@dataclass(frozen=True)
class QuestionGroup:
    """An original question plus paraphrases with the same meaning."""

    id: str
    original: str
    paraphrases: tuple[str, ...]

    def __post_init__(self):
        if not self.paraphrases:
            raise ContractViolation(f"group {self.id!r} has no paraphrases")
        if self.original not in self.paraphrases:
            raise ContractViolation(f"group {self.id!r}: original not among paraphrases")


@dataclass(frozen=True)
class Answer:
    group_id: str
    review_id: str
    question_used: str
    text: str
    confidence: float


@dataclass(frozen=True)
class AnswerCluster:
    tag_text: str
    members: tuple[Answer, ...]

    @property
    def member_count(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class DistinctAnswerSet:
    group_id: str
    clusters: tuple[AnswerCluster, ...]


class AnswerProvider(ABC):
    """Extracts at most one answer span from a context document."""

    @abstractmethod
    def answer(self, question: str, context: str) -> tuple[str, float] | None:
        """Return (span text, confidence in [0, 1]) or None for no answer.

        A non-None span must occur verbatim in ``context``.
        """


class FixtureAnswerProvider(AnswerProvider):
    """Recorded answers keyed by ``"<question>\\u241F<review_id>"``.

    The key carries the review id while the provider interface receives the
    review *text*, so the corpus is supplied up front to recover ids from
    contexts.  Missing keys mean "no answer".  Confidence defaults to 1.0
    when a recorded entry does not specify one.
    """

    def __init__(self, fixtures: dict | str | Path, reviews: list[Review]):
        if not isinstance(fixtures, dict):
            with open(fixtures, encoding="utf-8") as fh:
                fixtures = json.load(fh)
        self._fixtures = fixtures
        self._id_by_text = {review.text: review.id for review in reviews}

    def answer(self, question: str, context: str) -> tuple[str, float] | None:
        review_id = self._id_by_text.get(context)
        if review_id is None:
            return None
        entry = self._fixtures.get(f"{question}{FIXTURE_KEY_SEP}{review_id}")
        if entry is None or entry.get("answer") is None:
            return None
        span = entry["answer"]
        if span not in context:
            raise ProtocolError(
                f"fixture answer {span!r} is not a substring of review {review_id!r}")
        return span, float(entry.get("confidence", 1.0))


class RemoteAnswerProvider(AnswerProvider):
    """Client for the ``POST /answer`` wire protocol.

    Request ``{"question": str, "context": str}``, response
    ``{"answer": string|null, "score": float}``.
    """

    def __init__(self, endpoint: str, timeout: float = 30.0, retries: int = 3,
                 session=None):
        self._endpoint = endpoint.rstrip("/")
        self._timeout = timeout
        self._retries = max(1, retries)
        self._session = session or requests.Session()

    def answer(self, question: str, context: str) -> tuple[str, float] | None:
        payload = {"question": question, "context": context}
        last_exc: Exception | None = None
        for _ in range(self._retries):
            try:
                resp = self._session.post(f"{self._endpoint}/answer", json=payload,
                                          timeout=self._timeout)
                resp.raise_for_status()
                body = resp.json()
                return self._validate(body, context)
            except (requests.ConnectionError, requests.Timeout) as exc:
                last_exc = exc
            except requests.HTTPError as exc:
                status = exc.response.status_code if exc.response is not None else None
                if status is not None and 500 <= status < 600:
                    last_exc = exc
                else:
                    raise ProtocolError(f"answer endpoint rejected request: {exc}") from exc
            except ValueError as exc:
                raise ProtocolError(f"answer endpoint returned non-JSON body: {exc}") from exc
        raise TransportError(
            f"answer endpoint unreachable after {self._retries} attempts: {last_exc}"
        ) from last_exc

    def _validate(self, body: dict, context: str) -> tuple[str, float] | None:
        span = body.get("answer")
        if span is None:
            return None
        score = float(body.get("score", 0.0))
        if not 0.0 <= score <= 1.0:
            raise ProtocolError(f"score {score} outside [0, 1]")
        if not isinstance(span, str) or span not in context:
            raise ProtocolError(f"answer {span!r} is not a substring of the context")
        return span, score


def load_question_groups(path: str | Path) -> list[QuestionGroup]:
    """Read a question-group config: a JSON list of
    ``{"id": ..., "original": ..., "paraphrases": [...]}`` objects."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, list):
        raise ContractViolation(f"{path}: expected a JSON list of question groups")
    groups = []
    for entry in raw:
        groups.append(QuestionGroup(
            id=str(entry["id"]),
            original=entry["original"],
            paraphrases=tuple(entry["paraphrases"]),
        ))
    return groups


def collect_answers(reviews: list[Review], groups: list[QuestionGroup],
                    provider: AnswerProvider,
                    max_in_flight: int = DEFAULT_MAX_IN_FLIGHT) -> list[Answer]:
    """Query the provider for every (review, group, paraphrase) triple.

    Transport and protocol failures are recorded per call and the run
    continues; it aborts with :class:`ProviderFailureError` only when more
    than half of all calls fail.  Results are assembled in deterministic
    triple order regardless of completion order.
    """
    if not reviews or not groups:
        raise ContractViolation("reviews and question groups must be non-empty")

    triples = [
        (review, group, paraphrase)
        for review in reviews
        for group in groups
        for paraphrase in group.paraphrases
    ]

    def query(triple) -> tuple[str, float] | None:
        review, _, paraphrase = triple
        return provider.answer(paraphrase, review.text)

    outcomes: list[tuple[str, float] | None | Exception] = []
    if max_in_flight > 1:
        with ThreadPoolExecutor(max_workers=max_in_flight) as pool:
            futures = [pool.submit(query, t) for t in triples]
            for future in futures:
                try:
                    outcomes.append(future.result())
                except (TransportError, ProtocolError) as exc:
                    outcomes.append(exc)
    else:
        for triple in triples:
            try:
                outcomes.append(query(triple))
            except (TransportError, ProtocolError) as exc:
                outcomes.append(exc)

    failures = sum(1 for o in outcomes if isinstance(o, Exception))
    if failures * 2 > len(triples):
        raise ProviderFailureError(
            f"{failures} of {len(triples)} provider calls failed")

    answers: list[Answer] = []
    for (review, group, paraphrase), outcome in zip(triples, outcomes):
        if outcome is None or isinstance(outcome, Exception):
            continue
        span, confidence = outcome
        answers.append(Answer(group.id, review.id, paraphrase, span, confidence))
    return answers


def _is_substantive(text: str) -> bool:
    return any(ch.isalnum() for ch in text)


def filter_answers(answers: list[Answer]) -> list[Answer]:
    """Drop vacuous spans and collapse per-review duplicates.

    A span is vacuous when, after trimming, it is empty or contains no
    alphanumeric character (the provider's way of saying "nothing found").
    Within one (group, review), case-insensitive duplicate texts collapse
    to a single answer keeping the highest confidence; duplicates from
    *different* reviews are kept so community sizes count reviewers.
    Idempotent; output sorted by (review, group, text).
    """
    best: dict[tuple[str, str, str], Answer] = {}
    for answer in answers:
        text = answer.text.strip()
        if not _is_substantive(text):
            continue
        key = (answer.group_id, answer.review_id, text.lower())
        kept = best.get(key)
        if kept is None or answer.confidence > kept.confidence:
            best[key] = replace(answer, text=text)
    return sorted(best.values(),
                  key=lambda a: (a.review_id, a.group_id, a.text.lower()))


def cluster_answers(answers: list[Answer], provider: EmbeddingProvider,
                    tau: float = DEFAULT_TAU, seed: int = 42,
                    damping: float = DEFAULT_DAMPING) -> DistinctAnswerSet:
    """Cluster one group's filtered answers into distinct tagged answers.

    Answer texts are treated as sentences and pushed through the embedding
    -> similarity -> threshold -> Louvain -> correlation-score pipeline.
    Every answer lands in exactly one cluster; answers isolated at the
    threshold become their own size-1 clusters.  Clusters are sorted by
    size (largest first), then tag confidence, then tag text.
    """
    if not answers:
        raise ContractViolation("cannot cluster an empty answer list")
    group_ids = {a.group_id for a in answers}
    if len(group_ids) > 1:
        raise ContractViolation(f"answers span multiple groups: {sorted(group_ids)}")
    group_id = answers[0].group_id

    if len(answers) == 1:
        only = answers[0]
        return DistinctAnswerSet(group_id, (AnswerCluster(only.text, (only,)),))

    pseudo = [Sentence(i, 0, a.text, tuple(tokenize(a.text))) for i, a in enumerate(answers)]
    embeddings = provider.embed(pseudo)
    scores = pairwise_similarities(embeddings)
    graph = build_graph(scores, tau)

    if not graph.edges:
        members = [(i,) for i in range(len(answers))]
        tags = {group: group[0] for group in members}
    else:
        partition = louvain(graph, seed)
        ranks = textrank(graph, damping)
        members = []
        tags = {}
        for _, refs in sorted(partition.communities().items()):
            group = tuple(ref[0] for ref in refs)
            best_ref = min(refs, key=lambda ref: (-ranks.score[ref], ref))
            members.append(group)
            tags[group] = best_ref[0]

    clusters = []
    for group in members:
        tag_answer = answers[tags[group]]
        clusters.append(AnswerCluster(tag_answer.text, tuple(answers[i] for i in group)))
    clusters.sort(key=lambda c: (-c.member_count, -_tag_confidence(c), c.tag_text))
    return DistinctAnswerSet(group_id, tuple(clusters))


def _tag_confidence(cluster: AnswerCluster) -> float:
    return max(a.confidence for a in cluster.members if a.text == cluster.tag_text)


def ask(question: str, reviews: list[Review], provider: AnswerProvider,
        embedder: EmbeddingProvider, tau: float = DEFAULT_TAU, seed: int = 42,
        top_k: int = 5, damping: float = DEFAULT_DAMPING,
        max_in_flight: int = DEFAULT_MAX_IN_FLIGHT) -> DistinctAnswerSet:
    """One ad-hoc question (no paraphrases) through collect -> filter -> cluster.

    Returns the ``top_k`` largest clusters; an empty cluster tuple means no
    review produced an answer.
    """
    if not question.strip():
        raise ContractViolation("question must be non-empty")
    if top_k < 1:
        raise ContractViolation(f"top_k must be >= 1, got {top_k}")

    group = QuestionGroup("adhoc", question, (question,))
    answers = filter_answers(
        collect_answers(reviews, [group], provider, max_in_flight=max_in_flight))
    if not answers:
        return DistinctAnswerSet(group.id, ())
    result = cluster_answers(answers, embedder, tau=tau, seed=seed, damping=damping)
    return DistinctAnswerSet(result.group_id, result.clusters[:top_k])
