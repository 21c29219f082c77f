#!/usr/bin/env python3
"""Extract multiple distinct answers to one customer question.

A single extractive QA pass returns at most one span per review, so the
question is fanned out into paraphrases, every paraphrase is asked
against every review, vacuous spans ("", ".") are dropped, per-review
duplicates collapse, and the survivors are clustered.  Each community is
one distinct answer; its size counts how many reviews back it.

This demo drives the pipeline with a recorded answer fixture (the same
JSON format the CLI's --answers flag consumes), so it runs fully offline.
"""

from reviewgraph import (
    FixtureAnswerProvider,
    HashEmbedder,
    QuestionGroup,
    Review,
    cluster_answers,
    collect_answers,
    filter_answers,
)

reviews = [
    Review("r1", 0, "The appetizers are great. For dessert the pumpkin sticky "
                    "rice is a must, and the mango on top is perfectly ripe."),
    Review("r2", 1, "Noodles with pork and crab are the thing to order here. "
                    "Big portions, fair prices."),
    Review("r3", 2, "We keep coming back for the noodles with pork and crab. "
                    "Highly recommend the mango sticky rice too."),
    Review("r4", 3, "Skip the mains and go straight for the pumpkin sticky "
                    "rice, easily the best dessert on the menu."),
]

group = QuestionGroup(
    id="food",
    original="What is the delicious food to order in the restaurant?",
    paraphrases=(
        "What is the delicious food to order in the restaurant?",
        "What should I eat?",
        "What is delicious?",
    ),
)

SEP = "␟"  # fixture keys are "<question><SEP><review id>"
fixtures = {
    f"What should I eat?{SEP}r1": {"answer": "The appetizers", "confidence": 0.9},
    f"What is delicious?{SEP}r1": {"answer": "pumpkin sticky rice", "confidence": 0.95},
    f"What should I eat?{SEP}r2": {"answer": "Noodles with pork and crab", "confidence": 0.94},
    f"What is delicious?{SEP}r2": {"answer": "", "confidence": 0.05},
    f"What should I eat?{SEP}r3": {"answer": "noodles with pork and crab", "confidence": 0.91},
    f"What is delicious?{SEP}r3": {"answer": "the mango sticky rice", "confidence": 0.84},
    f"What is delicious?{SEP}r4": {"answer": "pumpkin sticky rice", "confidence": 0.97},
    f"What should I eat?{SEP}r4": {"answer": "pumpkin sticky rice", "confidence": 0.88},
}

provider = FixtureAnswerProvider(fixtures, reviews)
collected = collect_answers(reviews, [group], provider)
print(f"collected {len(collected)} raw answers "
      f"({len(reviews) * len(group.paraphrases)} provider calls)")

answers = filter_answers(collected)
print(f"{len(answers)} answers survive filtering (vacuous spans dropped, "
      f"per-review duplicates collapsed):")
for a in answers:
    print(f"  [{a.review_id}] {a.text!r} (confidence {a.confidence:.2f})")

result = cluster_answers(answers, HashEmbedder(dimension=768), tau=0.5, seed=42)
print(f"\n{len(result.clusters)} distinct answers, most supported first:")
for cluster in result.clusters:
    backers = ", ".join(a.review_id for a in cluster.members)
    print(f"  {cluster.tag_text!r} -- {cluster.member_count} review(s): {backers}")
