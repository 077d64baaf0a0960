import random
import string
from pathlib import Path
from typing import Callable, List

import pytest
from langchain_core.documents import Document

from mapreduce_wordfreq.models import make_document

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    for name in ("WORDFREQ_WORKERS", "WORDFREQ_BLOCK_SIZE", "WORDFREQ_EXCHANGE_TIMEOUT",
                 "WORDFREQ_PARTITION", "WORDFREQ_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def two_docs() -> List[Document]:
    return [
        make_document("doc1", "I want to test MapReduce"),
        make_document("doc2", "MapReduce is a cool algorithm to test."),
    ]


def _vocabulary(rng: random.Random, size: int) -> List[str]:
    words = set()
    while len(words) < size:
        words.add("".join(rng.choice(string.ascii_lowercase) for _ in range(rng.randint(1, 8))))
    return sorted(words)


def _decorate(rng: random.Random, word: str) -> str:
    roll = rng.random()
    if roll < 0.1:
        return word.capitalize()
    if roll < 0.2:
        return word + rng.choice(".,;!?")
    if roll < 0.25:
        return '"' + word.upper() + '"'
    return word


@pytest.fixture
def corpus_factory() -> Callable[..., List[Document]]:
    """Random documents over a Zipf-like vocabulary, with case and punctuation noise."""

    def build(seed: int, n_docs: int, n_words: int, vocab_size: int = 1000) -> List[Document]:
        rng = random.Random(seed)
        vocabulary = _vocabulary(rng, vocab_size)
        rng.shuffle(vocabulary)
        weights = [1.0 / (rank + 1) for rank in range(len(vocabulary))]
        docs = []
        for index in range(n_docs):
            words = rng.choices(vocabulary, weights=weights, k=n_words)
            text = " ".join(_decorate(rng, word) for word in words)
            docs.append(make_document(f"doc{index:04d}", text))
        return docs

    return build
