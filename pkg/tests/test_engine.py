import math

import numpy as np
import pytest

from mapreduce_wordfreq.engine import (
    alternating_harmonic,
    apply_map,
    generate_values,
    map_reduce_blocked,
    map_reduce_blocked_timed,
    map_reduce_serial,
    tree_combine,
)
from mapreduce_wordfreq.models import BlockConfig, MapKind, MapSpec

SQRT = MapSpec(kind=MapKind.SQRT)
IDENTITY = MapSpec(kind=MapKind.IDENTITY)
ALTHARM = MapSpec(kind=MapKind.ALTHARM)


@pytest.fixture(scope="module")
def uniforms():
    return np.random.default_rng(42).random(1_000_000)


def test_serial_examples():
    assert map_reduce_serial([1, 4, 9], SQRT) == 6.0
    assert map_reduce_serial([], SQRT) == 0.0
    assert map_reduce_serial([], IDENTITY) == 0.0
    ten = map_reduce_serial(np.zeros(10), ALTHARM)
    assert ten == pytest.approx(0.6456349206349207, abs=1e-15)
    expected = 0.0
    for i in range(1, 11):
        expected += (-1) ** (i + 1) / i
    assert ten == expected


def test_serial_is_a_left_fold():
    values = [1e16, 1.0, -1e16, 1.0]
    expected = 0.0
    for value in values:
        expected += value
    assert map_reduce_serial(values, IDENTITY) == expected


def test_altharm_uses_positions_not_values():
    mapped = apply_map(np.array([7.0, -3.0, 100.0]), MapKind.ALTHARM)
    assert mapped.tolist() == [1.0, -0.5, 1 / 3]
    shifted = apply_map(np.zeros(2), MapKind.ALTHARM, offset=2)
    assert shifted.tolist() == [1 / 3, -0.25]


def test_sqrt_of_negative_propagates_nan():
    assert math.isnan(map_reduce_serial([1.0, -1.0, 4.0], SQRT))
    assert math.isnan(map_reduce_blocked([1.0, -1.0, 4.0], SQRT, BlockConfig(block_size=1)))


def test_blocked_small_example():
    assert map_reduce_blocked([1, 4, 9], SQRT, BlockConfig(block_size=1)) == 6.0
    assert map_reduce_blocked([], SQRT, BlockConfig(block_size=4, workers=4)) == 0.0


@pytest.mark.parametrize("block_size", [10, 11, 1000])
def test_single_block_equals_serial_bitwise(block_size):
    values = np.random.default_rng(1).random(10) * 1e6
    for spec in (IDENTITY, SQRT, ALTHARM):
        blocked = map_reduce_blocked(values, spec, BlockConfig(block_size=block_size, workers=3))
        assert blocked == map_reduce_serial(values, spec)


@pytest.mark.parametrize("spec", [IDENTITY, SQRT])
def test_blocked_is_independent_of_worker_count(uniforms, spec):
    results = {workers: map_reduce_blocked(uniforms, spec, BlockConfig(block_size=256, workers=workers))
               for workers in (1, 2, 4, 8)}
    assert len(set(results.values())) == 1


@pytest.mark.parametrize("spec", [IDENTITY, SQRT])
def test_blocked_agrees_with_serial(uniforms, spec):
    serial = map_reduce_serial(uniforms, spec)
    blocked = map_reduce_blocked(uniforms, spec, BlockConfig(block_size=256, workers=4))
    assert abs(blocked - serial) / max(1.0, abs(serial)) <= 1e-12


def test_more_workers_than_blocks():
    values = np.arange(5, dtype=np.float64)
    assert map_reduce_blocked(values, IDENTITY, BlockConfig(block_size=2, workers=16)) == 10.0


def test_tree_combine_shape():
    assert tree_combine([]) == 0.0
    assert tree_combine([3.0]) == 3.0
    # ((1e16 + 1) + (-1e16 + 1)) pairs neighbours before the outer add
    assert tree_combine([1e16, 1.0, -1e16, 1.0]) == (1e16 + 1.0) + (-1e16 + 1.0)
    assert tree_combine([1.0, 2.0, 4.0]) == (1.0 + 2.0) + 4.0


def test_timed_variant_reports_stages(uniforms):
    value, timings = map_reduce_blocked_timed(uniforms[:10_000], SQRT, BlockConfig(block_size=64, workers=2))
    assert value == map_reduce_blocked(uniforms[:10_000], SQRT, BlockConfig(block_size=64, workers=1))
    assert timings.total_ns >= timings.map_fold_ns
    assert timings.total_ns >= timings.combine_ns


@pytest.mark.parametrize("n, expected", [(0, 0.0), (1, 1.0), (2, 0.5)])
def test_alternating_harmonic_small(n, expected):
    assert alternating_harmonic(n) == expected


def test_alternating_harmonic_converges_to_ln2():
    assert abs(alternating_harmonic(1_000_000) - math.log(2)) <= 1e-6


@pytest.mark.parametrize("n", [1, 2, 3, 10, 99, 256, 257, 1000])
def test_alternating_series_remainder_bound(n):
    value = alternating_harmonic(n, BlockConfig(block_size=16, workers=2))
    assert abs(value - math.log(2)) <= 1 / (n + 1)


def test_alternating_harmonic_rejects_negative():
    with pytest.raises(ValueError):
        alternating_harmonic(-1)


def test_generate_values():
    positions = generate_values(MapKind.ALTHARM, 4)
    assert positions.tolist() == [1.0, 2.0, 3.0, 4.0]
    first = generate_values(MapKind.SQRT, 100, seed=5)
    assert np.array_equal(first, generate_values(MapKind.SQRT, 100, seed=5))
    assert first.min() >= 0.0 and first.max() < 1.0
