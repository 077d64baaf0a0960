"""
Blocked map-then-tree-reduce over numeric arrays.

The array is cut into ceil(N / block_size) blocks. Each block is folded
left to right, and the block partials are combined pairwise in block-index
order by a fixed-shape binary tree. The result depends only on the values,
the map and block_size, never on the worker count or scheduling.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import numpy as np

from .models import BlockConfig, EngineTimings, MapKind, MapSpec

logger = logging.getLogger(__name__)


def _as_array(values) -> np.ndarray:
    return np.ascontiguousarray(values, dtype=np.float64).reshape(-1)


def apply_map(values: np.ndarray, kind: MapKind, offset: int = 0) -> np.ndarray:
    """Map a slice whose first element sits at 0-based position `offset`."""
    if kind is MapKind.IDENTITY:
        return values
    if kind is MapKind.SQRT:
        # negative inputs become NaN and propagate through the sum
        with np.errstate(invalid="ignore"):
            return np.sqrt(values)
    positions = np.arange(offset + 1, offset + len(values) + 1, dtype=np.float64)
    signs = np.where(positions % 2 == 1, 1.0, -1.0)
    return signs / positions


def _fold(mapped: np.ndarray) -> float:
    # add.accumulate is a strict left-to-right running sum (np.sum is pairwise)
    if mapped.size == 0:
        return 0.0
    return float(np.add.accumulate(mapped)[-1])


def map_reduce_serial(values, spec: MapSpec) -> float:
    """Reference oracle: one left-to-right fold of map(values)."""
    array = _as_array(values)
    return _fold(apply_map(array, spec.kind))


def _fold_blocks(array: np.ndarray, kind: MapKind, first_block: int, last_block: int, block_size: int) -> np.ndarray:
    start = first_block * block_size
    stop = min(last_block * block_size, len(array))
    mapped = apply_map(array[start:stop], kind, offset=start)
    full = len(mapped) // block_size
    partials = []
    if full:
        rows = mapped[:full * block_size].reshape(full, block_size)
        partials.append(np.add.accumulate(rows, axis=1)[:, -1])
    if len(mapped) % block_size:
        partials.append(np.array([_fold(mapped[full * block_size:])]))
    if not partials:
        return np.empty(0, dtype=np.float64)
    return np.concatenate(partials)


def tree_combine(partials: List[float]) -> float:
    """Pairwise sum (0+1, 2+3, ...) level by level; an odd tail is carried up unchanged."""
    if not partials:
        return 0.0
    level = list(partials)
    while len(level) > 1:
        paired = [level[i] + level[i + 1] for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            paired.append(level[-1])
        level = paired
    return level[0]


def _worker_ranges(n_blocks: int, workers: int) -> List[Tuple[int, int]]:
    groups = min(workers, n_blocks)
    base, extra = divmod(n_blocks, groups)
    ranges = []
    start = 0
    for group in range(groups):
        stop = start + base + (1 if group < extra else 0)
        ranges.append((start, stop))
        start = stop
    return ranges


def map_reduce_blocked_timed(values, spec: MapSpec, cfg: BlockConfig) -> Tuple[float, EngineTimings]:
    began = time.perf_counter_ns()
    array = _as_array(values)
    n_blocks = -(-len(array) // cfg.block_size)
    if n_blocks == 0:
        elapsed = time.perf_counter_ns() - began
        return 0.0, EngineTimings(total_ns=elapsed)

    ranges = _worker_ranges(n_blocks, cfg.workers)
    if len(ranges) == 1:
        partial_groups = [_fold_blocks(array, spec.kind, 0, n_blocks, cfg.block_size)]
    else:
        with ThreadPoolExecutor(max_workers=len(ranges), thread_name_prefix="fold") as pool:
            futures = [pool.submit(_fold_blocks, array, spec.kind, lo, hi, cfg.block_size) for lo, hi in ranges]
            partial_groups = [future.result() for future in futures]
    folded = time.perf_counter_ns()

    partials = np.concatenate(partial_groups).tolist()
    result = tree_combine(partials)
    done = time.perf_counter_ns()

    logger.debug("blocked %s: %d values, %d blocks, %d worker group(s)",
                 spec.kind.value, len(array), n_blocks, len(ranges))
    timings = EngineTimings(map_fold_ns=folded - began, combine_ns=done - folded, total_ns=done - began)
    return result, timings


def map_reduce_blocked(values, spec: MapSpec, cfg: BlockConfig) -> float:
    result, _ = map_reduce_blocked_timed(values, spec, cfg)
    return result


def alternating_harmonic(n: int, cfg: Optional[BlockConfig] = None) -> float:
    """Sum of (-1)**(i+1)/i for i = 1..n; tends to ln 2."""
    if n < 0:
        raise ValueError("term count must be non-negative")
    return map_reduce_blocked(np.zeros(n), MapSpec(kind=MapKind.ALTHARM), cfg or BlockConfig())


def generate_values(kind: MapKind, n: int, seed: int = 0) -> np.ndarray:
    """Synthetic benchmark input: uniform [0, 1) doubles, or positions 1..n for ALTHARM."""
    if kind is MapKind.ALTHARM:
        return np.arange(1, n + 1, dtype=np.float64)
    return np.random.default_rng(seed).random(n)
