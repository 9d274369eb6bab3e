"""DNA alphabet, integer encoding and the immutable sequence containers.

Nucleotides are stored one byte per symbol with codes a=1, c=2, g=3, t=4.
Code 0 never comes out of the encoder; it is kept free for the DC3 padding
and the suffix-tree sentinel, which both need a symbol smaller than every
real nucleotide.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import EmptyPattern, EmptySequence, EmptyQuerySet, InvalidCode, InvalidSymbol


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...] = ("a", "c", "g", "t")
    pad_code: int = 0

    @property
    def size(self) -> int:
        return len(self.symbols)

    def code(self, symbol: str) -> int:
        return self.symbols.index(symbol.lower()) + 1


DNA = Alphabet()

_ENCODE = np.zeros(256, dtype=np.uint8)
for _i, _ch in enumerate(DNA.symbols, start=1):
    _ENCODE[ord(_ch)] = _i
    _ENCODE[ord(_ch.upper())] = _i
_DECODE = np.frombuffer(b"?acgt", dtype=np.uint8)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class EncodedSequence:
    """A nucleotide string as a read-only ``uint8`` code array."""

    codes: np.ndarray

    def __post_init__(self):
        codes = np.ascontiguousarray(self.codes, dtype=np.uint8)
        if codes.ndim != 1:
            raise ValueError("codes must be one-dimensional")
        if codes.flags.writeable:
            codes = _frozen(codes.copy())
        object.__setattr__(self, "codes", codes)

    @property
    def n(self) -> int:
        return int(self.codes.shape[0])

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EncodedSequence):
            return NotImplemented
        return np.array_equal(self.codes, other.codes)

    def __hash__(self) -> int:
        return hash(self.codes.tobytes())

    def __repr__(self) -> str:
        head = decode_sequence(self[:20]) if self.n else ""
        more = "..." if self.n > 20 else ""
        return f"EncodedSequence({head!r}{more}, n={self.n})"

    def __getitem__(self, key: slice) -> "EncodedSequence":
        if not isinstance(key, slice):
            raise TypeError("EncodedSequence only supports slicing; use .codes for items")
        return EncodedSequence(self.codes[key])

    def tobytes(self) -> bytes:
        return self.codes.tobytes()


def encode_sequence(text: str) -> EncodedSequence:
    """Encode ``text`` (case-insensitive a/c/g/t) into codes 1..4.

    >>> encode_sequence("acGT").codes.tolist()
    [1, 2, 3, 4]
    """
    if not text:
        raise EmptySequence("cannot encode an empty sequence")
    try:
        raw = np.frombuffer(text.encode("ascii"), dtype=np.uint8)
    except UnicodeEncodeError:
        pos = next(i for i, ch in enumerate(text) if ord(ch) > 127)
        raise InvalidSymbol(pos, text[pos]) from None
    codes = _ENCODE[raw]
    bad = np.flatnonzero(codes == 0)
    if bad.size:
        pos = int(bad[0])
        raise InvalidSymbol(pos, text[pos])
    return EncodedSequence(_frozen(codes))


def decode_sequence(seq: EncodedSequence | Sequence[int] | np.ndarray) -> str:
    codes = seq.codes if isinstance(seq, EncodedSequence) else np.asarray(seq)
    if codes.size:
        bad = np.flatnonzero((codes < 1) | (codes > 4))
        if bad.size:
            raise InvalidCode(int(bad[0]))
    return _DECODE[codes.astype(np.intp)].tobytes().decode("ascii")


class QuerySet:
    """An ordered batch of queries packed into one flat code buffer.

    Query ``q`` occupies ``codes[offsets[q]:offsets[q + 1]]``; the flat
    layout is what the batch kernels consume directly.
    """

    __slots__ = ("codes", "offsets")

    def __init__(self, codes: np.ndarray, offsets: np.ndarray):
        codes = np.ascontiguousarray(codes, dtype=np.uint8)
        offsets = np.ascontiguousarray(offsets, dtype=np.int64)
        if offsets.ndim != 1 or offsets.size < 1 or offsets[0] != 0 or offsets[-1] != codes.size:
            raise ValueError("offsets must start at 0 and end at len(codes)")
        if np.any(np.diff(offsets) < 0):
            raise ValueError("offsets must be non-decreasing")
        self.codes = _frozen(codes)
        self.offsets = _frozen(offsets)

    @classmethod
    def from_sequences(cls, queries: Iterable[EncodedSequence]) -> "QuerySet":
        parts = [q.codes for q in queries]
        lengths = np.fromiter((p.size for p in parts), dtype=np.int64, count=len(parts))
        offsets = np.zeros(len(parts) + 1, dtype=np.int64)
        np.cumsum(lengths, out=offsets[1:])
        codes = np.concatenate(parts) if parts else np.zeros(0, dtype=np.uint8)
        return cls(codes, offsets)

    @classmethod
    def from_strings(cls, queries: Iterable[str]) -> "QuerySet":
        return cls.from_sequences(encode_sequence(q) for q in queries)

    @classmethod
    def uniform(cls, block: np.ndarray) -> "QuerySet":
        """Wrap a ``(Q, m)`` code matrix as ``Q`` queries of length ``m``."""
        block = np.ascontiguousarray(block, dtype=np.uint8)
        q, m = block.shape
        return cls(block.reshape(-1), np.arange(q + 1, dtype=np.int64) * m)

    def __len__(self) -> int:
        return int(self.offsets.size - 1)

    def __getitem__(self, q: int) -> EncodedSequence:
        if q < 0:
            q += len(self)
        if not 0 <= q < len(self):
            raise IndexError(q)
        return EncodedSequence(self.codes[self.offsets[q] : self.offsets[q + 1]])

    def __iter__(self) -> Iterator[EncodedSequence]:
        return (self[q] for q in range(len(self)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuerySet):
            return NotImplemented
        return np.array_equal(self.offsets, other.offsets) and np.array_equal(self.codes, other.codes)

    @property
    def lengths(self) -> np.ndarray:
        return np.diff(self.offsets)

    @property
    def uniform_length(self) -> int | None:
        lengths = self.lengths
        if lengths.size and np.all(lengths == lengths[0]):
            return int(lengths[0])
        return None

    def check_matchable(self) -> None:
        """Raise unless the batch is non-empty and has no empty query."""
        if len(self) == 0:
            raise EmptyQuerySet("query set is empty")
        empty = np.flatnonzero(self.lengths == 0)
        if empty.size:
            raise EmptyPattern(int(empty[0]))
