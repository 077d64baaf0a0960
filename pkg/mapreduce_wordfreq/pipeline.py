"""
Word-count pipeline: tokenize -> sort -> plan -> encode -> exchange ->
reduce -> repair, with a wall-clock timing per stage barrier.
"""

import logging
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from typing import Dict, Iterator, List, Literal, Optional, Sequence

from langchain_core.documents import Document

from .config import DEFAULT_EXCHANGE_TIMEOUT
from .errors import PipelineError, WordFreqError
from .models import CountMap, RunResult, StageTimings
from .reduce import boundary_repair, merge_counts, reduce_sorted
from .shuffle import (
    Transport,
    build_outbound,
    deliver,
    kept_words,
    plan_global_partitions,
    plan_partition,
)
from .text_normalization import sort_words, tokenize_all, tokenize_text

logger = logging.getLogger(__name__)

Partition = Literal["global", "local"]


def assign_round_robin(corpus: Sequence[Document], n_workers: int) -> List[List[Document]]:
    if n_workers < 1:
        raise ValueError("n_workers must be at least 1")
    return [list(corpus[j::n_workers]) for j in range(n_workers)]


@contextmanager
def _stage(name: str, elapsed: Dict[str, int]) -> Iterator[None]:
    began = time.perf_counter_ns()
    try:
        yield
    except PipelineError:
        raise
    except (WordFreqError, ValueError) as exc:
        raise PipelineError(name, str(exc)) from exc
    finally:
        elapsed[f"{name}_ns"] = time.perf_counter_ns() - began
    logger.debug("stage %s took %.3f ms", name, elapsed[f"{name}_ns"] / 1e6)


def run_wordcount(corpus: Sequence[Document], n_workers: int, partition: Partition = "global",
                  transport: Optional[Transport] = None,
                  exchange_timeout: float = DEFAULT_EXCHANGE_TIMEOUT) -> RunResult:
    """Count words across `corpus` with `n_workers` workers.

    Documents are dealt to workers round-robin by index. The final counts
    equal serial_wordcount(corpus) exactly.
    """
    if n_workers < 1:
        raise ValueError("n_workers must be at least 1")
    if partition not in ("global", "local"):
        raise ValueError(f"unknown partition strategy {partition!r}")

    began = time.perf_counter_ns()
    elapsed: Dict[str, int] = {}

    if not corpus:
        empty: List[CountMap] = [{} for _ in range(n_workers)]
        timings = StageTimings(total_ns=time.perf_counter_ns() - began)
        return RunResult(counts={}, shards=empty, pre_repair=empty, timings=timings,
                         n_workers=n_workers, partition=partition)

    assigned = assign_round_robin(corpus, n_workers)
    logger.info("word count over %d document(s) with %d worker(s), %s partitioning",
                len(corpus), n_workers, partition)

    with ThreadPoolExecutor(max_workers=n_workers, thread_name_prefix="worker") as pool:
        with _stage("map", elapsed):
            tokens = list(pool.map(tokenize_all, assigned))
        with _stage("sort", elapsed):
            sorted_lists = list(pool.map(sort_words, tokens))
        with _stage("plan", elapsed):
            if partition == "global":
                plans = plan_global_partitions(sorted_lists)
            else:
                plans = [plan_partition(words, j, n_workers) for j, words in enumerate(sorted_lists)]
        with _stage("encode", elapsed):
            outbound = list(pool.map(build_outbound, plans, sorted_lists))
            kept = [kept_words(plan, words) for plan, words in zip(plans, sorted_lists)]
        with _stage("exchange", elapsed):
            held = deliver(plans, kept, outbound, transport, timeout=exchange_timeout)
        with _stage("reduce", elapsed):
            pre_repair = list(pool.map(reduce_sorted, held))

    with _stage("repair", elapsed):
        shards = boundary_repair(pre_repair)
        counts = merge_counts(shards)

    timings = StageTimings(**elapsed, total_ns=time.perf_counter_ns() - began)
    logger.info("word count finished: %d distinct words in %.3f ms", len(counts), timings.total_ns / 1e6)
    return RunResult(counts=counts, shards=shards, pre_repair=pre_repair, timings=timings,
                     n_workers=n_workers, partition=partition)


def serial_wordcount(corpus: Sequence[Document]) -> CountMap:
    """Single-context tokenize + count; the oracle for run_wordcount."""
    counts: Counter = Counter()
    for doc in corpus:
        counts.update(tokenize_text(doc.page_content))
    return dict(sorted(counts.items()))
