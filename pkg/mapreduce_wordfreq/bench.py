"""Serial vs. blocked engine benchmark with per-run and median timings."""

import logging
import math
import statistics
import time
from typing import List, Optional, Sequence

from pydantic import BaseModel

from .config import RELATIVE_TOLERANCE
from .engine import generate_values, map_reduce_blocked_timed, map_reduce_serial
from .models import BlockConfig, EngineTimings, MapKind, MapSpec

logger = logging.getLogger(__name__)


class BenchRun(BaseModel):
    """Timing result for one repetition of one engine configuration."""

    run: int
    engine: str
    workers: int
    seconds: float
    value: float
    stages: Optional[EngineTimings] = None


class BenchSummary(BaseModel):
    engine: str
    workers: int
    median_seconds: float
    value: float
    relative_difference: float
    agrees: bool


class BenchReport(BaseModel):
    map: MapKind
    n: int
    block_size: int
    repeat: int
    seed: int
    serial_value: float
    runs: List[BenchRun]
    summaries: List[BenchSummary]
    ln2_distance: Optional[float] = None


def relative_difference(value: float, reference: float) -> float:
    return abs(value - reference) / max(1.0, abs(reference))


def run_bench(kind: MapKind, n: int, block_size: int, workers: Sequence[int],
              repeat: int, seed: int = 0) -> BenchReport:
    spec = MapSpec(kind=kind)
    values = generate_values(kind, n, seed)
    runs: List[BenchRun] = []

    for run in range(repeat):
        began = time.perf_counter()
        value = map_reduce_serial(values, spec)
        runs.append(BenchRun(run=run, engine="serial", workers=1,
                             seconds=time.perf_counter() - began, value=value))
        for count in workers:
            cfg = BlockConfig(block_size=block_size, workers=count)
            value, stages = map_reduce_blocked_timed(values, spec, cfg)
            runs.append(BenchRun(run=run, engine="blocked", workers=count,
                                 seconds=stages.total_ns / 1e9, value=value, stages=stages))

    serial_value = next(r.value for r in runs if r.engine == "serial")
    summaries = []
    for engine, count in [("serial", 1)] + [("blocked", c) for c in workers]:
        mine = [r for r in runs if r.engine == engine and r.workers == count]
        diff = relative_difference(mine[0].value, serial_value)
        summaries.append(BenchSummary(engine=engine, workers=count,
                                      median_seconds=statistics.median(r.seconds for r in mine),
                                      value=mine[0].value, relative_difference=diff,
                                      agrees=diff <= RELATIVE_TOLERANCE))
        if diff > RELATIVE_TOLERANCE:
            logger.warning("%s engine with %d worker(s) disagrees with serial: %.3e", engine, count, diff)

    ln2_distance = None
    if kind is MapKind.ALTHARM:
        ln2_distance = abs(summaries[-1].value - math.log(2))
    return BenchReport(map=kind, n=n, block_size=block_size, repeat=repeat, seed=seed,
                       serial_value=serial_value, runs=runs, summaries=summaries, ln2_distance=ln2_distance)
