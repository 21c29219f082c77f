#!/usr/bin/env python3
"""Contextual token vectors: the same word lands in different places.

Every token maps to a d-dimensional vector in [-1, 1] derived from the
token *and* the words around it, so "bank" next to "river" is a different
point than "bank" next to "money".  The offline hash embedder is bitwise
reproducible: rerunning this script prints identical numbers.
"""

import numpy as np

from reviewgraph import HashEmbedder, Sentence, cosine, tokenize


def sentence(text: str, j: int) -> Sentence:
    return Sentence(0, j, text, tuple(tokenize(text)))


provider = HashEmbedder(dimension=768, context_window=2)

contexts = [
    sentence("we sat by the river bank all afternoon", 0),
    sentence("the money bank opens at nine", 1),
    sentence("a second money bank opened nearby", 2),
]
embeddings = provider.embed(contexts)

# locate the vector of "bank" inside each sentence
bank_vectors = []
for s, e in zip(contexts, embeddings):
    position = s.tokens.index("bank")
    bank_vectors.append(e.vectors[position])
    print(f"'bank' in {s.text!r}")
    print(f"  first 4 components: {np.round(e.vectors[position][:4], 4)}")

print("\ncosine between the 'bank' vectors:")
print(f"  river-bank vs money-bank : {cosine(bank_vectors[0], bank_vectors[1]):+.4f}")
print(f"  money-bank vs money-bank': {cosine(bank_vectors[1], bank_vectors[2]):+.4f}")
print("\nidentical (token, context) pairs give identical vectors; anything")
print("inside the two-word context window reseeds the draw.")
