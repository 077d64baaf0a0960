import random
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from mapreduce_wordfreq.errors import ExchangeError, MalformedFrameError, TransportError
from mapreduce_wordfreq.models import WordList
from mapreduce_wordfreq.shuffle import (
    QueueTransport,
    build_outbound,
    exchange,
    kept_words,
    plan_global_partitions,
    plan_partition,
)
from mapreduce_wordfreq.text_normalization import sort_words

DOC1 = WordList(words=["i", "mapreduce", "test", "to", "want"], is_sorted=True)
DOC2 = WordList(words=["a", "algorithm", "cool", "is", "mapreduce", "test", "to"], is_sorted=True)


def _random_sorted_lists(seed, n_workers, n_words):
    rng = random.Random(seed)
    vocabulary = ["".join(rng.choice("abcdefgh") for _ in range(rng.randint(1, 4))) for _ in range(200)]
    words = rng.choices(vocabulary, k=n_words)
    lists = [words[j::n_workers] for j in range(n_workers)]
    return words, [sort_words(WordList(words=chunk)) for chunk in lists]


def test_plan_partition_worked_example():
    plan0 = plan_partition(DOC1, 0, 2)
    plan1 = plan_partition(DOC2, 1, 2)
    assert plan0.boundaries == [0, 2, 5]
    assert plan1.boundaries == [0, 4, 7]
    assert kept_words(plan0, DOC1) == ["i", "mapreduce"]
    assert kept_words(plan1, DOC2) == ["mapreduce", "test", "to"]


def test_plan_partition_single_worker_keeps_everything():
    plan = plan_partition(DOC2, 0, 1)
    assert plan.boundaries == [0, 7]
    assert build_outbound(plan, DOC2) == {}


@pytest.mark.parametrize("worker_id, n_workers", [(-1, 2), (2, 2), (0, 0)])
def test_plan_partition_rejects_bad_worker(worker_id, n_workers):
    with pytest.raises(ValueError):
        plan_partition(DOC1, worker_id, n_workers)


def test_plan_partition_requires_sorted_words():
    with pytest.raises(ValueError):
        plan_partition(WordList(words=["b", "a"]), 0, 2)


@given(k=st.integers(min_value=0, max_value=500), n=st.integers(min_value=1, max_value=9), data=st.data())
def test_plan_partition_chunk_sizes(k, n, data):
    worker_id = data.draw(st.integers(min_value=0, max_value=n - 1))
    words = WordList(words=[f"w{i:04d}" for i in range(k)], is_sorted=True)
    plan = plan_partition(words, worker_id, n)
    sizes = plan.chunk_sizes

    assert sum(sizes) == k
    assert plan.kept_size == k // n
    sent = [size for index, size in enumerate(sizes) if index != worker_id]
    if sent:
        assert max(sent) - min(sent) <= 1
        # excess goes to the lowest sent chunks first
        assert sent == sorted(sent, reverse=True)


def test_global_planner_reproduces_worked_example():
    plans = plan_global_partitions([DOC1, DOC2])
    assert [plan.boundaries for plan in plans] == [[0, 2, 5], [0, 4, 7]]


def test_global_planner_balances_pooled_ranks():
    _, lists = _random_sorted_lists(3, 4, 1000)
    plans = plan_global_partitions(lists)
    per_receiver = [sum(plan.chunk_sizes[t] for plan in plans) for t in range(4)]
    assert per_receiver == [250, 250, 250, 250]


def test_global_planner_with_empty_workers():
    lists = [WordList(words=[], is_sorted=True), WordList(words=["a", "b", "c"], is_sorted=True)]
    plans = plan_global_partitions(lists)
    assert plans[0].boundaries == [0, 0, 0]
    assert plans[1].boundaries == [0, 1, 3]


def test_exchange_worked_example():
    assignments = [(plan_partition(DOC1, 0, 2), DOC1), (plan_partition(DOC2, 1, 2), DOC2)]
    held = exchange(assignments)
    assert held[0].words == ["a", "algorithm", "cool", "i", "is", "mapreduce"]
    assert held[1].words == ["mapreduce", "test", "test", "to", "to", "want"]
    assert all(words.is_sorted for words in held)


def test_exchange_single_worker_is_identity():
    held = exchange([(plan_partition(DOC2, 0, 1), DOC2)])
    assert held[0].words == DOC2.words


def test_exchange_empty():
    assert exchange([]) == []


@pytest.mark.parametrize("seed", range(5))
def test_exchange_four_workers_conserves_and_orders(seed):
    words, lists = _random_sorted_lists(seed, 4, 1000)
    held = exchange(list(zip(plan_global_partitions(lists), lists)))

    assert Counter(w for shard in held for w in shard.words) == Counter(words)
    for lower in range(4):
        for upper in range(lower + 1, 4):
            if held[lower].words and held[upper].words:
                assert held[lower].words[-1] <= held[upper].words[0]


def test_exchange_local_plans_conserve_words():
    words, lists = _random_sorted_lists(11, 4, 1000)
    plans = [plan_partition(chunk, j, 4) for j, chunk in enumerate(lists)]
    held = exchange(list(zip(plans, lists)))
    assert Counter(w for shard in held for w in shard.words) == Counter(words)


def test_exchange_is_deterministic():
    _, lists = _random_sorted_lists(7, 8, 2000)
    plans = plan_global_partitions(lists)
    first = exchange(list(zip(plans, lists)))
    second = exchange(list(zip(plans, lists)))
    assert [w.words for w in first] == [w.words for w in second]


def test_exchange_rejects_misplaced_plan():
    plans = plan_global_partitions([DOC1, DOC2])
    with pytest.raises(ValueError):
        exchange([(plans[1], DOC2), (plans[0], DOC1)])


class BrokenRecvTransport(QueueTransport):
    def recv(self, receiver, sender):
        raise TransportError("link down")


class CorruptingTransport(QueueTransport):
    def send(self, sender, receiver, payload):
        super().send(sender, receiver, b"XXXX" + payload[4:])


def test_exchange_error_names_both_workers():
    plans = plan_global_partitions([DOC1, DOC2])
    with pytest.raises(ExchangeError) as info:
        exchange([(plans[0], DOC1), (plans[1], DOC2)], transport=BrokenRecvTransport(2))
    assert {info.value.sender, info.value.receiver} == {0, 1}
    assert isinstance(info.value.__cause__, TransportError)


def test_corrupt_frame_surfaces_as_exchange_error():
    plans = plan_global_partitions([DOC1, DOC2])
    with pytest.raises(ExchangeError) as info:
        exchange([(plans[0], DOC1), (plans[1], DOC2)], transport=CorruptingTransport(2))
    assert isinstance(info.value.__cause__, MalformedFrameError)


def test_queue_transport_times_out():
    transport = QueueTransport(2, timeout=0.01)
    with pytest.raises(TransportError):
        transport.recv(0, 1)


def test_queue_transport_rejects_use_after_close():
    transport = QueueTransport(2)
    transport.close()
    with pytest.raises(TransportError):
        transport.send(0, 1, b"")
