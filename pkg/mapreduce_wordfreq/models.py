from enum import Enum
from typing import Dict, List, Optional, Tuple

from langchain_core.documents import Document
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .config import DEFAULT_BLOCK_SIZE

# word -> occurrence count, keys kept in canonical (sorted) order
CountMap = Dict[str, int]
ShardedCounts = List[CountMap]


class WordList(BaseModel):
    words: List[str] = []
    is_sorted: bool = False

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def _check_order(self) -> "WordList":
        if self.is_sorted:
            words = self.words
            for i in range(1, len(words)):
                if words[i - 1] > words[i]:
                    raise ValueError(f"words out of order at index {i}: {words[i - 1]!r} > {words[i]!r}")
        return self

    def __len__(self) -> int:
        return len(self.words)


class ShardPlan(BaseModel):
    """Cut points of one worker's sorted words into n chunks; chunk t goes to worker t."""

    worker_id: int = Field(ge=0)
    n_workers: int = Field(ge=1)
    local_count: int = Field(ge=0)
    boundaries: List[int]

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def _check_boundaries(self) -> "ShardPlan":
        if self.worker_id >= self.n_workers:
            raise ValueError(f"worker_id {self.worker_id} out of range for {self.n_workers} workers")
        b = self.boundaries
        if len(b) != self.n_workers + 1:
            raise ValueError(f"expected {self.n_workers + 1} boundaries, got {len(b)}")
        if b[0] != 0 or b[-1] != self.local_count:
            raise ValueError("boundaries must span [0, local_count]")
        if any(b[i] > b[i + 1] for i in range(len(b) - 1)):
            raise ValueError(f"boundaries must be non-decreasing: {b}")
        return self

    def chunk(self, index: int) -> Tuple[int, int]:
        return self.boundaries[index], self.boundaries[index + 1]

    @property
    def chunk_sizes(self) -> List[int]:
        b = self.boundaries
        return [b[i + 1] - b[i] for i in range(self.n_workers)]

    @property
    def kept_size(self) -> int:
        start, end = self.chunk(self.worker_id)
        return end - start


class StageTimings(BaseModel):
    map_ns: int = Field(0, ge=0)
    sort_ns: int = Field(0, ge=0)
    plan_ns: int = Field(0, ge=0)
    encode_ns: int = Field(0, ge=0)
    exchange_ns: int = Field(0, ge=0)
    reduce_ns: int = Field(0, ge=0)
    repair_ns: int = Field(0, ge=0)
    total_ns: int = Field(0, ge=0)

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def _check_total(self) -> "StageTimings":
        stages = [self.map_ns, self.sort_ns, self.plan_ns, self.encode_ns,
                  self.exchange_ns, self.reduce_ns, self.repair_ns]
        if self.total_ns < max(stages):
            raise ValueError("total_ns must cover every stage")
        return self


class RunResult(BaseModel):
    counts: CountMap
    shards: ShardedCounts
    pre_repair: ShardedCounts
    timings: StageTimings
    n_workers: int = Field(ge=1)
    partition: str

    model_config = ConfigDict(extra="forbid")


class MapKind(str, Enum):
    IDENTITY = "identity"
    SQRT = "sqrt"
    ALTHARM = "altharm"


class MapSpec(BaseModel):
    """Per-element map applied before the sum.

    ALTHARM ignores the stored value and maps the 1-based position i to
    (-1)**(i+1) / i.
    """

    kind: MapKind = MapKind.IDENTITY

    model_config = ConfigDict(extra="forbid")


class BlockConfig(BaseModel):
    block_size: int = Field(DEFAULT_BLOCK_SIZE, ge=1)
    workers: int = Field(1, ge=1)

    model_config = ConfigDict(extra="forbid")


class EngineTimings(BaseModel):
    map_fold_ns: int = Field(0, ge=0)
    combine_ns: int = Field(0, ge=0)
    total_ns: int = Field(0, ge=0)

    model_config = ConfigDict(extra="forbid")


class Corpus(BaseModel):
    label: str = Field(min_length=1)
    documents: List[Document] = []

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def _check_ids(self) -> "Corpus":
        seen = set()
        for doc in self.documents:
            if not doc.id:
                raise ValueError("every document needs a non-empty id")
            if doc.id in seen:
                raise ValueError(f"duplicate document id {doc.id!r} in corpus {self.label!r}")
            seen.add(doc.id)
        return self


class FrequencyRow(BaseModel):
    word: str
    count: int = Field(ge=1)
    relfreq: float


class FrequencyTable(BaseModel):
    label: str
    total_words: int = Field(0, ge=0)
    rows: List[FrequencyRow] = []


class DistinctRow(BaseModel):
    word: str
    score: float


class DistinctivenessReport(BaseModel):
    label: str
    rows: List[DistinctRow] = []


def make_document(doc_id: str, text: str, source: Optional[str] = None) -> Document:
    """Build a raw document; `source` defaults to the id."""
    if not doc_id:
        raise ValueError("document id must be non-empty")
    return Document(id=doc_id, page_content=text, metadata={"source": source or doc_id})
