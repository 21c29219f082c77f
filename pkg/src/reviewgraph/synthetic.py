"""Deterministic synthetic review corpus with a known community structure.

Three topic templates with fully disjoint vocabularies each yield ten
single-sentence reviews: a fixed 23-token core plus one trailing variant
word.  Within a template, any two variants share all but the last three
(token, context) pairs, so their similarity sits far above the default
threshold; across templates no word is shared at all, so similarities sit
near zero.  The intended partition is therefore exactly the three
templates, which makes the corpus a ground-truth oracle for the full
summarization pipeline.
"""

from __future__ import annotations

from .segmentation import Review, tokenize

_TEMPLATES: list[tuple[list[str], list[str]]] = [
    (
        # dessert topic
        "pumpkin sticky rice arrives steaming under golden caramel drizzle "
        "while jasmine pandan coconut cream soaks every chewy grain making "
        "this dessert utterly".split(),
        ["unforgettable", "delicious", "magnificent", "heavenly", "divine",
         "spectacular", "sublime", "irresistible", "marvelous", "exquisite"],
    ),
    (
        # service topic
        "our waiter greeted everyone warmly refilled water without being "
        "asked explained daily specials patiently and answered each question "
        "in a manner most".split(),
        ["attentive", "courteous", "gracious", "welcoming", "thoughtful",
         "cheerful", "devoted", "professional", "considerate", "respectful"],
    ),
    (
        # ambience topic
        "dim lanterns glow over cozy corner booths as soft jazz hums past "
        "exposed brick walls giving the whole room an atmosphere of pure".split(),
        ["serenity", "charm", "romance", "warmth", "intimacy",
         "elegance", "nostalgia", "comfort", "calm", "magic"],
    ),
]

_RATINGS: list[float | None] = [5.0, 4.5, 4.0, None, 4.5]


def synthetic_corpus() -> tuple[list[Review], dict[str, int]]:
    """Build the 30-review corpus and the review-id -> template-index labels."""
    reviews: list[Review] = []
    labels: dict[str, int] = {}
    for t, (core, variants) in enumerate(_TEMPLATES):
        for v, variant in enumerate(variants):
            words = [*core, variant]
            text = " ".join(words).capitalize() + "."
            review_id = f"t{t}-v{v:02d}"
            reviews.append(Review(review_id, len(reviews), text,
                                  _RATINGS[v % len(_RATINGS)]))
            labels[review_id] = t
    return reviews, labels


def template_vocabularies() -> list[set[str]]:
    """Tokenized vocabulary of each template (cores plus variant words)."""
    vocabularies = []
    for core, variants in _TEMPLATES:
        words = set(tokenize(" ".join(core))) | set(tokenize(" ".join(variants)))
        vocabularies.append(words)
    return vocabularies
