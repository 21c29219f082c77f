#!/usr/bin/env python3
"""Compare sentences of unequal length with a sliding window.

An N-token and an M-token sentence (N > M) cannot be compared directly:
their flattened embeddings have different lengths (d*N vs d*M).  Instead
an M-token window slides across the longer sentence, each offset is
scored with one cosine, and the best window wins.  All N-M+1 offsets are
examined, including both boundary windows.
"""

import numpy as np

from reviewgraph import HashEmbedder, Sentence, SentenceEmbedding, cosine, flatten, sentence_similarity, tokenize


def sentence(text: str, j: int) -> Sentence:
    return Sentence(0, j, text, tuple(tokenize(text)))


provider = HashEmbedder(dimension=768)

# the short sentence is a verbatim suffix of the long one, so away from the
# cut the tokens keep identical contexts and the correct offset stands out
long_sentence = sentence("after years of visits the green curry remains our favorite dish", 0)
short_sentence = sentence("the green curry remains our favorite dish", 1)

e_long, e_short = provider.embed([long_sentence, short_sentence])
n, m = len(e_long), len(e_short)
print(f"long sentence : {long_sentence.text!r} ({n} tokens)")
print(f"short sentence: {short_sentence.text!r} ({m} tokens)")
print(f"window offsets examined: {n - m + 1}\n")

base = flatten(e_short, 0, m)
for k in range(n - m + 1):
    window_tokens = " ".join(long_sentence.tokens[k:k + m])
    score = cosine(base, flatten(e_long, k, m))
    print(f"  offset {k}: [{window_tokens:<46}] cosine {score:+.4f}")

result = sentence_similarity(e_long, e_short)
print(f"\nsimilarity = max over windows = {result.sigma:+.4f}")
print("(offset 4 is the true alignment; only the two tokens next to the cut")
print("see different context words, the other five match exactly)")

# a window carved straight out of the long embedding matches perfectly
carved = SentenceEmbedding((0, 2), e_long.vectors[4:4 + m].copy())
print(f"\ncarved-out window vs the long sentence: "
      f"{sentence_similarity(e_long, carved).sigma:+.6f}")
