"""Exception hierarchy shared by every stage of the package."""

from typing import Optional


class WordFreqError(Exception):
    """Base class for all errors raised by mapreduce_wordfreq."""


class ConfigError(WordFreqError):
    pass


class FrameError(WordFreqError):
    """A wire frame could not be encoded or decoded."""


class MalformedFrameError(FrameError):
    pass


class TruncatedFrameError(FrameError):
    pass


class TrailingBytesError(FrameError):
    pass


class FrameEncodingError(FrameError):
    pass


class FrameTooLargeError(FrameError):
    pass


class TransportError(WordFreqError):
    pass


class ExchangeError(WordFreqError):
    """Delivery between two workers failed."""

    def __init__(self, sender: int, receiver: int, reason: str):
        self.sender = sender
        self.receiver = receiver
        super().__init__(f"exchange {sender} -> {receiver} failed: {reason}")


class PipelineError(WordFreqError):
    """A pipeline stage failed; the original error is chained as __cause__."""

    def __init__(self, stage: str, reason: str):
        self.stage = stage
        super().__init__(f"{stage} stage failed: {reason}")


class IngestionError(WordFreqError):
    def __init__(self, path: str, reason: str, label: Optional[str] = None):
        self.path = path
        self.reason = reason
        self.label = label
        prefix = f"[{label}] " if label else ""
        super().__init__(f"{prefix}{path}: {reason}")
