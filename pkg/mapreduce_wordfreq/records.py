from typing import List, TypedDict


class FrequencyRecord(TypedDict):
    word: str
    count: int
    relfreq: float


class DistinctRecord(TypedDict):
    word: str
    score: float


class ComparisonRecord(TypedDict):
    label: str
    total_words: int
    top: List[FrequencyRecord]
    distinct: List[DistinctRecord]  # highest score first
