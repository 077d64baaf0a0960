"""
Shuffle / exchange: range-partition each worker's sorted words and move
chunk t of every worker to worker t.

Two planners produce ShardPlans:

- plan_partition cuts one worker's list on its own: the kept chunk holds
  floor(k/n) words and the rest is spread over the sent chunks.
- plan_global_partitions cuts every worker at shared splitter words chosen
  by pooled rank, so after the exchange the workers hold contiguous
  alphabetical ranges and only the n-1 splitter words can straddle.
"""

import heapq
import logging
import queue
from bisect import bisect_left, bisect_right
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Protocol, Sequence, Tuple

from .config import DEFAULT_EXCHANGE_TIMEOUT
from .errors import ExchangeError, FrameError, TransportError
from .models import ShardPlan, WordList
from .wire import WireMessage, decode_message, encode_message

logger = logging.getLogger(__name__)


def _require_sorted(words: WordList) -> None:
    if not words.is_sorted:
        raise ValueError("word list must be sorted before partitioning")


def plan_partition(sorted_words: WordList, worker_id: int, n_workers: int) -> ShardPlan:
    """Split one worker's sorted words into n contiguous chunks.

    The kept chunk (index worker_id) gets floor(k/n) words. The remaining
    words are divided evenly across the other n-1 chunks, the excess going
    one word per chunk starting from chunk 0.
    """
    if n_workers < 1:
        raise ValueError("n_workers must be at least 1")
    if not 0 <= worker_id < n_workers:
        raise ValueError(f"worker_id {worker_id} out of range [0, {n_workers})")
    _require_sorted(sorted_words)

    k = len(sorted_words)
    keep = k // n_workers
    sizes = [0] * n_workers
    sizes[worker_id] = keep
    if n_workers > 1:
        base, extra = divmod(k - keep, n_workers - 1)
        for index in range(n_workers):
            if index == worker_id:
                continue
            sizes[index] = base + (1 if extra > 0 else 0)
            extra -= 1
    else:
        sizes[0] = k

    boundaries = [0]
    for size in sizes:
        boundaries.append(boundaries[-1] + size)
    return ShardPlan(worker_id=worker_id, n_workers=n_workers, local_count=k, boundaries=boundaries)


def _count_le(lists: Sequence[List[str]], word: str) -> int:
    return sum(bisect_right(words, word) for words in lists)


def _select(lists: Sequence[List[str]], rank: int) -> str:
    """Return the pooled element of 0-based `rank` without pooling the lists."""
    best: Optional[str] = None
    for words in lists:
        lo, hi = 0, len(words)
        while lo < hi:
            mid = (lo + hi) // 2
            if _count_le(lists, words[mid]) > rank:
                hi = mid
            else:
                lo = mid + 1
        if lo < len(words) and (best is None or words[lo] < best):
            best = words[lo]
    if best is None:
        raise ValueError(f"rank {rank} exceeds the pooled word count")
    return best


def plan_global_partitions(sorted_lists: Sequence[WordList]) -> List[ShardPlan]:
    """Plan every worker's cuts against shared, rank-balanced splitters.

    Boundary t sits at pooled rank floor(t*K/n). Copies of the splitter word
    that fall below that rank are assigned to the lower chunk greedily in
    worker order.
    """
    n_workers = len(sorted_lists)
    if n_workers < 1:
        raise ValueError("at least one worker is required")
    for words in sorted_lists:
        _require_sorted(words)

    lists = [words.words for words in sorted_lists]
    total = sum(len(words) for words in lists)
    cuts: List[List[int]] = [[0] for _ in range(n_workers)]

    for t in range(1, n_workers):
        rank = (t * total) // n_workers
        if rank >= total:
            for j, words in enumerate(lists):
                cuts[j].append(len(words))
            continue
        splitter = _select(lists, rank)
        below = rank - sum(bisect_left(words, splitter) for words in lists)
        for j, words in enumerate(lists):
            start = bisect_left(words, splitter)
            take = min(below, bisect_right(words, splitter) - start)
            below -= take
            cuts[j].append(start + take)
        logger.debug("boundary %d: splitter %r at pooled rank %d", t, splitter, rank)

    plans = []
    for j, words in enumerate(lists):
        plans.append(ShardPlan(worker_id=j, n_workers=n_workers, local_count=len(words),
                               boundaries=cuts[j] + [len(words)]))
    return plans


class Transport(Protocol):
    """Ordered, reliable, point-to-point byte channel between every worker pair."""

    def send(self, sender: int, receiver: int, payload: bytes) -> None:
        ...

    def recv(self, receiver: int, sender: int) -> bytes:
        ...

    def close(self) -> None:
        ...


class QueueTransport:
    """In-process transport: one unbounded queue per ordered worker pair."""

    def __init__(self, n_workers: int, timeout: float = DEFAULT_EXCHANGE_TIMEOUT):
        self.n_workers = n_workers
        self.timeout = timeout
        self._channels: Dict[Tuple[int, int], "queue.Queue[bytes]"] = {
            (s, r): queue.Queue() for s in range(n_workers) for r in range(n_workers) if s != r
        }
        self._closed = False

    def _channel(self, sender: int, receiver: int) -> "queue.Queue[bytes]":
        if self._closed:
            raise TransportError("transport is closed")
        try:
            return self._channels[(sender, receiver)]
        except KeyError:
            raise TransportError(f"no channel {sender} -> {receiver}") from None

    def send(self, sender: int, receiver: int, payload: bytes) -> None:
        self._channel(sender, receiver).put(payload)

    def recv(self, receiver: int, sender: int) -> bytes:
        try:
            return self._channel(sender, receiver).get(timeout=self.timeout)
        except queue.Empty:
            raise TransportError(f"no frame within {self.timeout}s") from None

    def close(self) -> None:
        self._closed = True


def kept_words(plan: ShardPlan, sorted_words: WordList) -> List[str]:
    start, end = plan.chunk(plan.worker_id)
    return sorted_words.words[start:end]


def build_outbound(plan: ShardPlan, sorted_words: WordList) -> Dict[int, WireMessage]:
    """Encode every chunk this worker sends, keyed by receiving worker."""
    if plan.local_count != len(sorted_words):
        raise ValueError(f"plan covers {plan.local_count} words, list has {len(sorted_words)}")
    outbound = {}
    for receiver in range(plan.n_workers):
        if receiver == plan.worker_id:
            continue
        start, end = plan.chunk(receiver)
        outbound[receiver] = encode_message(sorted_words.words[start:end])
    return outbound


def _run_worker(worker_id: int, n_workers: int, kept: List[str],
                outbound: Dict[int, WireMessage], transport: Transport) -> WordList:
    for receiver, message in sorted(outbound.items()):
        try:
            transport.send(worker_id, receiver, message.payload)
        except TransportError as exc:
            raise ExchangeError(worker_id, receiver, str(exc)) from exc

    runs = [kept]
    for sender in range(n_workers):
        if sender == worker_id:
            continue
        try:
            payload = transport.recv(worker_id, sender)
            runs.append(decode_message(payload).words)
        except (TransportError, FrameError) as exc:
            raise ExchangeError(sender, worker_id, str(exc)) from exc
    return WordList(words=list(heapq.merge(*runs)), is_sorted=True)


def deliver(plans: Sequence[ShardPlan], kept: Sequence[List[str]],
            outbound: Sequence[Dict[int, WireMessage]], transport: Optional[Transport] = None,
            timeout: float = DEFAULT_EXCHANGE_TIMEOUT) -> List[WordList]:
    """Run all workers concurrently: send frames, receive peers' frames, merge."""
    n_workers = len(plans)
    if n_workers == 1:
        return [WordList(words=list(kept[0]), is_sorted=True)]

    own_transport = transport is None
    if transport is None:
        transport = QueueTransport(n_workers, timeout=timeout)
    try:
        with ThreadPoolExecutor(max_workers=n_workers, thread_name_prefix="exchange") as pool:
            futures = [
                pool.submit(_run_worker, j, n_workers, list(kept[j]), outbound[j], transport)
                for j in range(n_workers)
            ]
            # results are collected in worker order, so arrival order never matters
            return [future.result() for future in futures]
    finally:
        if own_transport:
            transport.close()


def exchange(assignments: Sequence[Tuple[ShardPlan, WordList]],
             transport: Optional[Transport] = None) -> List[WordList]:
    """Move chunk t of every worker to worker t and merge what each worker holds."""
    if not assignments:
        return []
    n_workers = len(assignments)
    for j, (plan, words) in enumerate(assignments):
        if plan.n_workers != n_workers:
            raise ValueError(f"worker {j} planned for {plan.n_workers} workers, expected {n_workers}")
        if plan.worker_id != j:
            raise ValueError(f"plan at position {j} belongs to worker {plan.worker_id}")
        _require_sorted(words)

    plans = [plan for plan, _ in assignments]
    kept = [kept_words(plan, words) for plan, words in assignments]
    outbound = [build_outbound(plan, words) for plan, words in assignments]
    return deliver(plans, kept, outbound, transport)
