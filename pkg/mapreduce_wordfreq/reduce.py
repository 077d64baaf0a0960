"""
Reduce phase: run-length counting of sorted word lists, then the serial
repair of words whose occurrences ended up on two or more workers.
"""

import logging
from collections import Counter
from itertools import groupby
from typing import Dict, Iterable, List

from .models import CountMap, ShardedCounts, WordList

logger = logging.getLogger(__name__)


def reduce_sorted(sorted_words: WordList) -> CountMap:
    if not sorted_words.is_sorted:
        raise ValueError("reduce_sorted needs a sorted word list")
    return {word: sum(1 for _ in run) for word, run in groupby(sorted_words.words)}


def merge_counts(maps: Iterable[CountMap]) -> CountMap:
    total: Counter = Counter()
    for counts in maps:
        total.update(counts)
    return dict(sorted(total.items()))


def count_straddling(sharded: ShardedCounts) -> int:
    """Number of distinct words present in more than one shard."""
    holders: Counter = Counter()
    for shard in sharded:
        holders.update(shard.keys())
    return sum(1 for held in holders.values() if held > 1)


def _keys_in_order(shard: CountMap) -> bool:
    keys = list(shard)
    return all(keys[i] < keys[i + 1] for i in range(len(keys) - 1))


def _is_contiguous(shards: ShardedCounts) -> bool:
    # first/last keys are only meaningful when every shard is keyed in sorted order
    previous_last = None
    for shard in shards:
        if not shard:
            continue
        if not _keys_in_order(shard):
            return False
        if previous_last is not None and next(iter(shard)) < previous_last:
            return False
        previous_last = next(reversed(shard))
    return True


def _repair_contiguous(shards: List[Dict[str, int]]) -> int:
    # Only a shard's first key can continue the previous non-empty shard's last key.
    owner = None
    boundary_word = None
    touched = set()
    for index, shard in enumerate(shards):
        if not shard:
            continue
        first = next(iter(shard))
        if owner is not None and first == boundary_word:
            shards[owner][first] += shard.pop(first)
            touched.add(first)
            if not shard:
                continue
        boundary_word = next(reversed(shard))
        owner = index
    return len(touched)


def _repair_full_scan(shards: List[Dict[str, int]]) -> int:
    owners: Dict[str, int] = {}
    touched = set()
    for index, shard in enumerate(shards):
        for word in list(shard):
            owner = owners.setdefault(word, index)
            if owner != index:
                shards[owner][word] += shard.pop(word)
                touched.add(word)
    return len(touched)


def boundary_repair(sharded: ShardedCounts) -> ShardedCounts:
    """Move every word held by several workers into its lowest-indexed holder.

    Shards are expected in worker order. Contiguous shards keyed in sorted
    order (as reduce_sorted produces them) are repaired by looking at
    first/last keys only; anything else falls back to a full scan.
    """
    shards = [dict(shard) for shard in sharded]
    if len(shards) < 2:
        return shards
    if _is_contiguous(shards):
        touched = _repair_contiguous(shards)
    else:
        logger.warning("shard ranges overlap or keys are unordered; repairing with a full scan")
        touched = _repair_full_scan(shards)
    logger.debug("boundary repair merged %d word(s) across %d shards", touched, len(shards))
    return shards
