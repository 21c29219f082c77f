"""Optional end-to-end checks against a live model server.

Skipped unless REVIEWGRAPH_SERVER_URL points at a running sidecar, e.g.

    (cd server && npm run build && PORT=8400 node dist/index.js) &
    REVIEWGRAPH_SERVER_URL=http://127.0.0.1:8400 pytest tests/test_remote_integration.py
"""

from __future__ import annotations

import os

import numpy as np
import pytest

from reviewgraph.embedding import RemoteEmbedder
from reviewgraph.qa import RemoteAnswerProvider
from reviewgraph.segmentation import Sentence, tokenize

SERVER_URL = os.environ.get("REVIEWGRAPH_SERVER_URL")

pytestmark = pytest.mark.skipif(
    not SERVER_URL, reason="REVIEWGRAPH_SERVER_URL not set")


def sent(text: str, j: int = 0) -> Sentence:
    return Sentence(0, j, text, tuple(tokenize(text)))


def test_remote_embeddings_validate_and_differ_by_context():
    provider = RemoteEmbedder(SERVER_URL, dimension=768)
    out = provider.embed([sent("river bank", 0), sent("money bank", 1)])
    assert [e.sentence_ref for e in out] == [(0, 0), (0, 1)]
    assert not np.array_equal(out[0].vectors[1], out[1].vectors[1])


def test_remote_embeddings_deterministic():
    provider = RemoteEmbedder(SERVER_URL, dimension=768)
    a = provider.embed([sent("the green curry remains our favorite")])
    b = provider.embed([sent("the green curry remains our favorite")])
    assert np.array_equal(a[0].vectors, b[0].vectors)


def test_remote_answers_are_verbatim_spans():
    provider = RemoteAnswerProvider(SERVER_URL)
    context = "Portions run slightly pricey for this neighborhood."
    got = provider.answer("How is the price?", context)
    assert got is not None
    span, score = got
    assert span in context
    assert 0.0 <= score <= 1.0


def test_remote_no_answer_is_none():
    provider = RemoteAnswerProvider(SERVER_URL)
    got = provider.answer("What is the wifi password?",
                          "The pumpkin sticky rice is delicious.")
    assert got is None
