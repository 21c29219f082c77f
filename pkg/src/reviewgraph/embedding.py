"""Per-token contextual sentence embeddings behind a pluggable provider.

Every token of a sentence maps to a fixed-length vector with components in
[-1, 1]; a sentence embedding is the ordered stack of its token vectors.
Vectors are *contextual*: the same word receives different vectors under
different neighbouring words, so "bank" next to "river" and "bank" next to
"money" land in different places.

Two providers are shipped:

* :class:`HashEmbedder` — a fully offline stand-in.  Each (token, local
  context) pair is hashed into a seed that drives a fixed RNG, giving
  bitwise-reproducible vectors with the contextuality property above.
* :class:`RemoteEmbedder` — an HTTP client for an inference sidecar that
  returns real model vectors over ``POST /embed``.
"""

from __future__ import annotations

import hashlib
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np
import requests

from .errors import ContractViolation, ProtocolError, TransportError
from .segmentation import Sentence

DEFAULT_DIMENSION = 768
DEFAULT_CONTEXT_WINDOW = 2

# Keyed hash so vectors are stable across processes and runs regardless of
# interpreter hash randomization.
_HASH_KEY = b"reviewgraph-ctx-embed-v1"


@dataclass(frozen=True)
class SentenceEmbedding:
    """Ordered token vectors for one sentence.

    ``vectors`` has shape (token_count, dim).  For remote providers the
    token count is the server's own tokenization and may differ from the
    local word count; downstream similarity only consumes ``vectors``.
    """

    sentence_ref: tuple[int, int]
    vectors: np.ndarray

    def __len__(self) -> int:
        return self.vectors.shape[0]

    @property
    def dimension(self) -> int:
        return self.vectors.shape[1]


class EmbeddingProvider(ABC):
    """Maps batches of sentences to batches of sentence embeddings."""

    @abstractmethod
    def embed(self, sentences: list[Sentence]) -> list[SentenceEmbedding]:
        """Embed a batch, preserving order."""

    @abstractmethod
    def dimension(self) -> int:
        """Vector length produced by this provider."""


def hash_embed(sentence: Sentence, d: int = DEFAULT_DIMENSION,
               context_window: int = DEFAULT_CONTEXT_WINDOW) -> SentenceEmbedding:
    """Deterministic contextual embedding of one sentence.

    Token ``t`` at position ``p`` is embedded from a keyed hash of
    ``(t, multiset of tokens within context_window of p)``; the digest
    seeds an RNG that draws ``d`` components uniformly from [-1, 1).
    Identical (token, context) pairs therefore give identical vectors,
    while any change to an in-window neighbour reseeds the draw.
    """
    if d < 8:
        raise ContractViolation(f"dimension must be >= 8, got {d}")
    if context_window < 0:
        raise ContractViolation(f"context_window must be >= 0, got {context_window}")
    if not sentence.tokens:
        raise ContractViolation(f"sentence {sentence.ref} has no tokens")

    tokens = sentence.tokens
    vectors = np.empty((len(tokens), d), dtype=np.float64)
    for p, token in enumerate(tokens):
        lo = max(0, p - context_window)
        context = sorted(tokens[lo:p] + tokens[p + 1:p + 1 + context_window])
        key = "\x00".join([token, *context]).encode("utf-8")
        digest = hashlib.blake2b(key, digest_size=8, key=_HASH_KEY).digest()
        rng = np.random.Generator(np.random.PCG64(int.from_bytes(digest, "big")))
        vectors[p] = rng.uniform(-1.0, 1.0, d)
    return SentenceEmbedding(sentence.ref, vectors)


class HashEmbedder(EmbeddingProvider):
    """Offline provider wrapping :func:`hash_embed`, with a vector cache."""

    def __init__(self, dimension: int = DEFAULT_DIMENSION,
                 context_window: int = DEFAULT_CONTEXT_WINDOW):
        if dimension < 8:
            raise ContractViolation(f"dimension must be >= 8, got {dimension}")
        if context_window < 0:
            raise ContractViolation(f"context_window must be >= 0, got {context_window}")
        self._dimension = dimension
        self._context_window = context_window

    def dimension(self) -> int:
        return self._dimension

    def embed(self, sentences: list[Sentence]) -> list[SentenceEmbedding]:
        return [hash_embed(s, self._dimension, self._context_window) for s in sentences]


class RemoteEmbedder(EmbeddingProvider):
    """Client for the ``POST /embed`` wire protocol.

    Request:  ``{"texts": [string...]}``
    Response: ``{"dim": int, "embeddings": [[[float; dim]...]...]}`` — one
    vector list per text, one vector per server-side token.  Responses are
    validated, never repaired: a wrong dimension or an out-of-range
    component raises :class:`ProtocolError` naming the offending sentence.
    """

    def __init__(self, endpoint: str, dimension: int = DEFAULT_DIMENSION,
                 timeout: float = 30.0, retries: int = 3, session=None):
        self._endpoint = endpoint.rstrip("/")
        self._dimension = dimension
        self._timeout = timeout
        self._retries = max(1, retries)
        self._session = session or requests.Session()

    def dimension(self) -> int:
        return self._dimension

    def embed(self, sentences: list[Sentence]) -> list[SentenceEmbedding]:
        if not sentences:
            raise ContractViolation("empty batch")
        payload = {"texts": [s.text for s in sentences]}
        body = self._post(payload)
        return self._validate(sentences, body)

    def _post(self, payload: dict) -> dict:
        last_exc: Exception | None = None
        for _ in range(self._retries):
            try:
                resp = self._session.post(f"{self._endpoint}/embed", json=payload,
                                          timeout=self._timeout)
                resp.raise_for_status()
                return resp.json()
            except (requests.ConnectionError, requests.Timeout) as exc:
                last_exc = exc
            except requests.HTTPError as exc:
                status = exc.response.status_code if exc.response is not None else None
                if status is not None and 500 <= status < 600:
                    last_exc = exc
                else:
                    raise ProtocolError(f"embed endpoint rejected request: {exc}") from exc
            except ValueError as exc:  # body was not JSON
                raise ProtocolError(f"embed endpoint returned non-JSON body: {exc}") from exc
        raise TransportError(
            f"embed endpoint unreachable after {self._retries} attempts: {last_exc}"
        ) from last_exc

    def _validate(self, sentences: list[Sentence], body: dict) -> list[SentenceEmbedding]:
        dim = body.get("dim")
        if dim != self._dimension:
            raise ProtocolError(f"server dimension {dim} != configured {self._dimension}")
        embeddings = body.get("embeddings")
        if not isinstance(embeddings, list) or len(embeddings) != len(sentences):
            count = len(embeddings) if isinstance(embeddings, list) else "missing"
            raise ProtocolError(f"expected {len(sentences)} embeddings, got {count}")
        tokenizations = body.get("tokenizations")

        out: list[SentenceEmbedding] = []
        for sentence, vecs in zip(sentences, embeddings):
            label = f"sentence {sentence.ref} ({sentence.text[:40]!r})"
            arr = np.asarray(vecs, dtype=np.float64)
            if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] != self._dimension:
                raise ProtocolError(f"{label}: bad embedding shape {arr.shape}")
            if tokenizations is not None:
                toks = tokenizations[len(out)]
                if len(toks) != arr.shape[0]:
                    raise ProtocolError(
                        f"{label}: {arr.shape[0]} vectors for {len(toks)} reported tokens")
            if np.any(np.abs(arr) > 1.0):
                raise ProtocolError(f"{label}: component outside [-1, 1]")
            if np.any(np.all(arr == 0.0, axis=1)):
                raise ProtocolError(f"{label}: all-zero token vector")
            out.append(SentenceEmbedding(sentence.ref, arr))
        return out
