#!/usr/bin/env python3
"""Split raw reviews into indexed sentences and heal short fragments.

Each review i is cut at terminal punctuation into sentences S[i, j].
Fragments shorter than --min-tokens words are merged into a neighbour so
one-word exclamations never become free-standing graph nodes.
"""

from reviewgraph import Review, merge_short, split_review, tokenize

review = Review(
    id="demo-1",
    index=0,
    text="Wow! The pad thai was excellent. Yum. Service was quick and the "
         "staff remembered our usual table. Pricey though.",
    rating=4.5,
)

print("review text:")
print(f"  {review.text}\n")

sentences = split_review(review)
print(f"split into {len(sentences)} raw sentences:")
for s in sentences:
    print(f"  S[{s.review_index},{s.sentence_index}] {s.text!r}  tokens={list(s.tokens)}")

merged = merge_short(sentences, min_tokens=4)
print(f"\nafter merging fragments below 4 tokens -> {len(merged)} sentences:")
for s in merged:
    print(f"  S[{s.review_index},{s.sentence_index}] {s.text!r}")

print("\ntokenization is deterministic, lowercased, punctuation-free:")
print(f"  {tokenize('The delivery is efficient.')}")
