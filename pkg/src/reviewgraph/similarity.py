"""Sentence similarity via cosine over flattened token-vector windows.

Two sentences of equal token count N compare directly: their embeddings
flatten to vectors of length d*N and the similarity is one cosine.  For
unequal counts N > M, an M-token window slides over the longer sentence:
the shorter sentence's full flattening is compared against every
contiguous M-token window of the longer one (offsets 0..N-M, i.e. N-M+1
comparisons so that both boundary windows are examined), and the maximum
cosine is the similarity.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .embedding import SentenceEmbedding
from .errors import ContractViolation

# Above this element count the dot product switches to exact (compensated)
# summation; plain float64 accumulation is fine below it.
_FSUM_THRESHOLD = 100_000


@dataclass(frozen=True)
class SimilarityScore:
    a: tuple[int, int]
    b: tuple[int, int]
    sigma: float


def _dot(u: np.ndarray, v: np.ndarray) -> float:
    if u.size > _FSUM_THRESHOLD:
        return math.fsum(np.multiply(u, v).tolist())
    return float(np.dot(u, v))


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """dot(u, v) / (|u| * |v|); inputs must be same-length and non-zero."""
    u = np.asarray(u, dtype=np.float64).ravel()
    v = np.asarray(v, dtype=np.float64).ravel()
    if u.size != v.size or u.size == 0:
        raise ContractViolation(f"length mismatch: {u.size} vs {v.size}")
    nu = math.sqrt(_dot(u, u))
    nv = math.sqrt(_dot(v, v))
    if nu == 0.0 or nv == 0.0:
        raise ContractViolation("zero-norm input")
    return _dot(u, v) / (nu * nv)


def flatten(embedding: SentenceEmbedding, start: int, count: int) -> np.ndarray:
    """Concatenate token vectors [start, start+count) into one long vector."""
    if count < 1:
        raise ContractViolation(f"window count must be >= 1, got {count}")
    if start < 0 or start + count > len(embedding):
        raise ContractViolation(
            f"window [{start}, {start + count}) out of range for {len(embedding)} tokens")
    return embedding.vectors[start:start + count].ravel()


def sentence_similarity(e1: SentenceEmbedding, e2: SentenceEmbedding) -> SimilarityScore:
    """Maximum window cosine between two sentence embeddings.

    Ties between window offsets resolve to the smallest offset, which is
    inconsequential because only the maximum value is reported.
    """
    if e1.dimension != e2.dimension:
        raise ContractViolation(
            f"dimension mismatch: {e1.dimension} vs {e2.dimension}")
    longer, shorter = (e1, e2) if len(e1) >= len(e2) else (e2, e1)
    m = len(shorter)
    base = flatten(shorter, 0, m)
    best = -np.inf
    for k in range(len(longer) - m + 1):
        score = cosine(base, flatten(longer, k, m))
        if score > best:
            best = score
    return SimilarityScore(e1.sentence_ref, e2.sentence_ref, best)


def pairwise_similarities(embeddings: list[SentenceEmbedding],
                          workers: int | None = None) -> list[SimilarityScore]:
    """One SimilarityScore per unordered pair, in index order (i < j).

    ``workers`` > 1 computes pairs on a thread pool; results are assembled
    by pair position, so parallel and sequential runs are identical.
    """
    if len(embeddings) < 2:
        raise ContractViolation(f"need >= 2 embeddings, got {len(embeddings)}")
    pairs = [(i, j) for i in range(len(embeddings)) for j in range(i + 1, len(embeddings))]

    def score(pair: tuple[int, int]) -> SimilarityScore:
        i, j = pair
        try:
            return sentence_similarity(embeddings[i], embeddings[j])
        except ContractViolation as exc:
            a, b = embeddings[i].sentence_ref, embeddings[j].sentence_ref
            raise ContractViolation(f"pair ({a}, {b}): {exc}") from exc

    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(score, pairs))
    return [score(p) for p in pairs]
