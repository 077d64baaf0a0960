"""
Text normalization: raw document text -> normalized word tokens.

Tokens are lowercased and stripped of leading/trailing characters that are
neither letters nor digits, so "Dog", "dog." and "DOG!" all become "dog".
Interior apostrophes and hyphens survive ("don't", "re-elect").
"""

from typing import Iterable, List, Optional

import regex
from langchain_core.documents import Document

from .models import WordList

# Anything that is not a letter or a number, anchored at either end.
_EDGE = regex.compile(r"^[^\p{L}\p{N}]+|[^\p{L}\p{N}]+$")


class _SimpleLowerTable(dict):
    # filled on demand; str.translate looks code points up here
    def __missing__(self, code: int) -> str:
        lowered = chr(code).lower()[0]
        self[code] = lowered
        return lowered


_LOWER = _SimpleLowerTable()


def simple_lower(text: str) -> str:
    """Lowercase one code point at a time, without context rules.

    A mapping that expands (U+0130 becomes "i" plus U+0307) keeps its first
    code point, and a final capital sigma becomes "σ" like any other.
    """
    return text.translate(_LOWER)


def normalize_word(raw: str) -> Optional[str]:
    """Normalize one whitespace-free fragment; None when nothing is left."""
    word = _EDGE.sub("", simple_lower(raw))
    return word or None


def tokenize_text(text: str) -> List[str]:
    tokens = []
    for fragment in text.split():
        word = normalize_word(fragment)
        if word is not None:
            tokens.append(word)
    return tokens


def tokenize(doc: Document) -> WordList:
    """Split a document on Unicode whitespace and normalize each fragment, in text order."""
    return WordList(words=tokenize_text(doc.page_content))


def tokenize_all(docs: Iterable[Document]) -> WordList:
    words: List[str] = []
    for doc in docs:
        words.extend(tokenize_text(doc.page_content))
    return WordList(words=words)


def sort_words(words: WordList) -> WordList:
    # str ordering is code-point ordering, which is the byte order of the UTF-8 encoding
    return WordList(words=sorted(words.words), is_sorted=True)
