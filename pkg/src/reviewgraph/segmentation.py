"""Review segmentation: split raw review text into indexed sentences.

A review with corpus position ``i`` is cut at terminal punctuation into
sentences indexed ``j`` within the review.  Fragments shorter than
``min_tokens`` words are merged into a neighbour so that very short
exclamations ("Wow!", "Yum.") do not end up as free-standing graph nodes.

Segmentation is deliberately simple and deterministic: a run of ``.``,
``!`` or ``?`` (or a newline) always terminates a sentence and there is no
abbreviation dictionary.  Occasional over-splitting ("Mr. Smith") only
produces short fragments, which the merge step heals.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import ContractViolation, UnusableReviewError

# Word tokens: runs of word characters, apostrophes kept inside ("i've").
_TOKEN_RE = re.compile(r"\w+(?:'\w+)*", re.UNICODE)

# A sentence segment: non-terminator characters plus the run of
# terminators that closes it.  Newlines act as terminators but are not
# captured into the segment text.
_SEGMENT_RE = re.compile(r"[^.!?\n]+[.!?]*")

DEFAULT_MIN_TOKENS = 4


@dataclass(frozen=True)
class Review:
    """One raw review; ``index`` is its position in the corpus."""

    id: str
    index: int
    text: str
    rating: float | None = None


@dataclass(frozen=True)
class Sentence:
    """A tokenized sentence, addressable as (review_index, sentence_index)."""

    review_index: int
    sentence_index: int
    text: str
    tokens: tuple[str, ...]

    @property
    def ref(self) -> tuple[int, int]:
        return (self.review_index, self.sentence_index)


def tokenize(text: str) -> list[str]:
    """Lowercased, punctuation-stripped word tokens in original order."""
    return _TOKEN_RE.findall(text.lower())


def split_review(review: Review) -> list[Sentence]:
    """Split a review at terminal punctuation into consecutively indexed sentences.

    Segments that contain no word token (pure punctuation or emoticons)
    are folded into the preceding sentence so the review text is never
    silently dropped.  Raises :class:`UnusableReviewError` when the review
    holds no usable text at all.
    """
    if not review.text.strip():
        raise UnusableReviewError(f"review {review.id!r} is blank")

    segments: list[str] = []
    for match in _SEGMENT_RE.finditer(review.text):
        piece = match.group().strip()
        if not piece:
            continue
        if tokenize(piece):
            segments.append(piece)
        elif segments:
            segments[-1] = f"{segments[-1]} {piece}"
        else:
            # Token-free opener ("!!!"); carried into the first real sentence.
            segments.append(piece)

    if segments and not tokenize(segments[0]):
        if len(segments) == 1:
            raise UnusableReviewError(f"review {review.id!r} has no word tokens")
        segments[0:2] = [f"{segments[0]} {segments[1]}"]

    if not segments:
        raise UnusableReviewError(f"review {review.id!r} has no word tokens")

    return [
        Sentence(review.index, j, text, tuple(tokenize(text)))
        for j, text in enumerate(segments)
    ]


def merge_short(sentences: list[Sentence], min_tokens: int = DEFAULT_MIN_TOKENS) -> list[Sentence]:
    """Merge sentences shorter than ``min_tokens`` into a neighbour.

    A short sentence is concatenated onto its predecessor; a short first
    sentence (which has none) is concatenated onto its successor.  Indices
    are reassigned consecutively.  Idempotent: a second pass is a no-op.
    A review whose total token count is below ``min_tokens`` collapses to
    a single sentence and is returned as-is.
    """
    if min_tokens < 1:
        raise ContractViolation(f"min_tokens must be >= 1, got {min_tokens}")
    if not sentences:
        return []
    if len({s.review_index for s in sentences}) > 1:
        raise ContractViolation("merge_short expects sentences from one review")

    review_index = sentences[0].review_index
    texts = [s.text for s in sentences]

    changed = True
    while changed and len(texts) > 1:
        changed = False
        merged: list[str] = []
        for text in texts:
            if merged and len(tokenize(text)) < min_tokens:
                merged[-1] = f"{merged[-1]} {text}"
                changed = True
            else:
                merged.append(text)
        # A short head has no predecessor: fold it forward instead.
        if len(merged) > 1 and len(tokenize(merged[0])) < min_tokens:
            merged[0:2] = [f"{merged[0]} {merged[1]}"]
            changed = True
        texts = merged

    return [
        Sentence(review_index, j, text, tuple(tokenize(text)))
        for j, text in enumerate(texts)
    ]


def segment_review(review: Review, min_tokens: int = DEFAULT_MIN_TOKENS) -> list[Sentence]:
    """split_review followed by merge_short."""
    return merge_short(split_review(review), min_tokens)


def load_reviews_jsonl(path: str | Path) -> list[Review]:
    """Read a review corpus from JSON Lines.

    One object per line: ``{"id": str, "text": str, "rating": number|null}``.
    Ids must be unique and texts non-blank.
    """
    reviews: list[Review] = []
    seen_ids: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ContractViolation(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            if not isinstance(record, dict) or "id" not in record or "text" not in record:
                raise ContractViolation(f"{path}:{lineno}: expected an object with 'id' and 'text'")
            review_id = str(record["id"])
            text = record["text"]
            if not isinstance(text, str) or not text.strip():
                raise UnusableReviewError(f"{path}:{lineno}: review {review_id!r} has blank text")
            if review_id in seen_ids:
                raise ContractViolation(f"{path}:{lineno}: duplicate review id {review_id!r}")
            seen_ids.add(review_id)
            rating = record.get("rating")
            reviews.append(Review(review_id, len(reviews), text, rating))
    return reviews
