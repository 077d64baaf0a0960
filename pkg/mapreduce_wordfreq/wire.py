"""
Framed wire codec for word batches.

Layout (little-endian, bit-exact):

    b"WCX1" | u32 count | u32 byte-length per word | concatenated UTF-8 words

One frame carries everything a receiver needs, so no count or length
travels out of band.
"""

import struct
from typing import List, Sequence, Union

from pydantic import BaseModel, ConfigDict

from .errors import (
    FrameEncodingError,
    FrameTooLargeError,
    MalformedFrameError,
    TrailingBytesError,
    TruncatedFrameError,
)
from .models import WordList

MAGIC = b"WCX1"
HEADER_SIZE = len(MAGIC) + 4
U32_MAX = 0xFFFFFFFF


class WireMessage(BaseModel):
    payload: bytes

    model_config = ConfigDict(frozen=True)


def encode_words(words: Sequence[str]) -> bytes:
    if len(words) > U32_MAX:
        raise FrameTooLargeError(f"batch of {len(words)} words exceeds the u32 count field")
    encoded = [word.encode("utf-8") for word in words]
    for word, data in zip(words, encoded):
        if len(data) > U32_MAX:
            raise FrameTooLargeError(f"word of {len(data)} bytes exceeds the u32 length field: {word[:20]!r}...")
    count = len(encoded)
    header = MAGIC + struct.pack("<I", count)
    lengths = struct.pack(f"<{count}I", *(len(data) for data in encoded))
    return b"".join([header, lengths, *encoded])


def encode_message(words: Union[WordList, Sequence[str]]) -> WireMessage:
    if isinstance(words, WordList):
        words = words.words
    return WireMessage(payload=encode_words(words))


def decode_words(payload: bytes) -> List[str]:
    view = memoryview(payload)
    if len(view) < len(MAGIC) or bytes(view[:4]) != MAGIC:
        raise MalformedFrameError(f"bad magic {bytes(view[:4])!r}, expected {MAGIC!r}")
    if len(view) < HEADER_SIZE:
        raise TruncatedFrameError(f"frame of {len(view)} bytes is shorter than the {HEADER_SIZE}-byte header")

    (count,) = struct.unpack_from("<I", view, 4)
    offset = HEADER_SIZE + 4 * count
    if offset > len(view):
        raise TruncatedFrameError(f"header declares {count} words but the length table is cut short")
    lengths = struct.unpack_from(f"<{count}I", view, HEADER_SIZE)

    end = offset + sum(lengths)
    if end > len(view):
        raise TruncatedFrameError(f"declared payload of {end - offset} bytes, only {len(view) - offset} present")
    if end < len(view):
        raise TrailingBytesError(f"{len(view) - end} unconsumed bytes after the last word")

    words = []
    for index, length in enumerate(lengths):
        chunk = view[offset:offset + length]
        try:
            words.append(bytes(chunk).decode("utf-8"))
        except UnicodeDecodeError as exc:
            raise FrameEncodingError(f"word {index} is not valid UTF-8: {exc.reason}") from exc
        offset += length
    return words


def decode_message(msg: Union[WireMessage, bytes]) -> WordList:
    """Inverse of encode_message; raises a FrameError subclass on any framing defect."""
    payload = msg.payload if isinstance(msg, WireMessage) else msg
    return WordList(words=decode_words(payload))
