"""
Corpus analysis: frequency tables and distinctive words of one corpus
against the pooled others.

Distinctiveness of word w for corpus A against pooled corpus B:

    score(w) = log((c_A + 1) / (T_A + V)) - log((c_B + 1) / (T_B + V))

with c the word's count, T the corpus total and V the size of the union
vocabulary. Swapping A and B negates every score.
"""

import logging
import math
from typing import Collection, Dict, List, Mapping, Optional, Sequence, Tuple

from .config import DEFAULT_EXCHANGE_TIMEOUT
from .models import (
    CountMap,
    Corpus,
    DistinctivenessReport,
    DistinctRow,
    FrequencyRow,
    FrequencyTable,
)
from .pipeline import Partition, run_wordcount
from .reduce import merge_counts

logger = logging.getLogger(__name__)


def build_frequency_table(counts: Mapping[str, int], label: str) -> FrequencyTable:
    total = sum(counts.values())
    ordered = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    rows = [FrequencyRow(word=word, count=count, relfreq=count / total) for word, count in ordered]
    return FrequencyTable(label=label, total_words=total, rows=rows)


def top_k(counts: Mapping[str, int], label: str, k: int) -> FrequencyTable:
    """Highest-count rows first, ties by word; fewer than k when the vocabulary is smaller."""
    if k < 0:
        raise ValueError("k must be non-negative")
    table = build_frequency_table(counts, label)
    return table.model_copy(update={"rows": table.rows[:k]})


def distinctive_words(target: Mapping[str, int], others: Mapping[str, int], k: int,
                      label: str = "") -> DistinctivenessReport:
    if k < 0:
        raise ValueError("k must be non-negative")
    vocabulary = set(target) | set(others)
    if not vocabulary:
        return DistinctivenessReport(label=label)

    size = len(vocabulary)
    target_total = sum(target.values()) + size
    others_total = sum(others.values()) + size
    scored = []
    for word in vocabulary:
        score = (math.log((target.get(word, 0) + 1) / target_total)
                 - math.log((others.get(word, 0) + 1) / others_total))
        scored.append((word, score))
    scored.sort(key=lambda item: (-item[1], item[0]))
    return DistinctivenessReport(label=label, rows=[DistinctRow(word=w, score=s) for w, s in scored[:k]])


def drop_stopwords(counts: Mapping[str, int], stopwords: Collection[str]) -> CountMap:
    return {word: count for word, count in counts.items() if word not in stopwords}


def pooled_others(counts_by_label: Mapping[str, CountMap], label: str) -> CountMap:
    return merge_counts(counts for other, counts in counts_by_label.items() if other != label)


def compare_corpora(corpora: Sequence[Corpus], n_workers: int, top: int, distinct: int,
                    stopwords: Optional[Collection[str]] = None, partition: Partition = "global",
                    exchange_timeout: float = DEFAULT_EXCHANGE_TIMEOUT) -> List[Tuple[FrequencyTable, DistinctivenessReport]]:
    """Top-k table and distinctiveness report of every corpus against the others."""
    counts_by_label: Dict[str, CountMap] = {}
    for corpus in corpora:
        counts = run_wordcount(corpus.documents, n_workers, partition=partition,
                               exchange_timeout=exchange_timeout).counts
        if stopwords:
            counts = drop_stopwords(counts, stopwords)
        counts_by_label[corpus.label] = counts
        logger.info("%s: %d words, %d distinct", corpus.label, sum(counts.values()), len(counts))

    results = []
    for corpus in corpora:
        counts = counts_by_label[corpus.label]
        others = pooled_others(counts_by_label, corpus.label)
        results.append((top_k(counts, corpus.label, top),
                        distinctive_words(counts, others, distinct, label=corpus.label)))
    return results
