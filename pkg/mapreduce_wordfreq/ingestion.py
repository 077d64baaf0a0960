"""
Corpus ingestion: one labeled Corpus per directory of plain-text files.
"""

import logging
from pathlib import Path
from typing import List, Set, Union

from langchain_core.documents import Document

from .config import TEXT_EXTENSIONS
from .errors import IngestionError
from .models import Corpus, make_document
from .text_normalization import normalize_word

logger = logging.getLogger(__name__)


def load_text_file(path: Path) -> Document:
    """Load one file as a document; invalid UTF-8 becomes U+FFFD."""
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise IngestionError(str(path), exc.strerror or str(exc)) from exc
    return make_document(path.name, data.decode("utf-8", errors="replace"), source=str(path))


def ingest_directory(path: Union[str, Path], label: str) -> Corpus:
    directory = Path(path)
    if not directory.is_dir():
        raise IngestionError(str(directory), "not a readable directory", label=label)

    documents: List[Document] = []
    for entry in sorted(directory.iterdir(), key=lambda p: p.name):
        if entry.name.startswith(".") or not entry.is_file():
            continue
        if entry.suffix.lower() not in TEXT_EXTENSIONS:
            continue
        try:
            documents.append(load_text_file(entry))
        except IngestionError as exc:
            raise IngestionError(exc.path, exc.reason, label=label) from exc

    logger.info("ingested %d document(s) for %s from %s", len(documents), label, directory)
    return Corpus(label=label, documents=documents)


def load_stopwords(path: Union[str, Path]) -> Set[str]:
    """Whitespace-separated stop words, normalized like corpus tokens."""
    try:
        text = Path(path).read_text(encoding="utf-8", errors="replace")
    except OSError as exc:
        raise IngestionError(str(path), exc.strerror or str(exc)) from exc
    words = {normalize_word(fragment) for fragment in text.split()}
    words.discard(None)
    return words
