from __future__ import annotations

import json
from pathlib import Path

import pytest

from reviewgraph.qa import load_question_groups
from reviewgraph.segmentation import load_reviews_jsonl

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def table1_reviews_path() -> Path:
    return DATA_DIR / "table1_reviews.jsonl"


@pytest.fixture(scope="session")
def table1_answers_path() -> Path:
    return DATA_DIR / "table1_answers.json"


@pytest.fixture(scope="session")
def food_questions_path() -> Path:
    return DATA_DIR / "food_questions.json"


@pytest.fixture(scope="session")
def table1_reviews(table1_reviews_path):
    return load_reviews_jsonl(table1_reviews_path)


@pytest.fixture(scope="session")
def table1_answers(table1_answers_path):
    with open(table1_answers_path, encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def question_groups(food_questions_path):
    return load_question_groups(food_questions_path)
