"""FASTA reading/writing and the GSA1 binary index format.

GSA1 layout (all little-endian)::

    b"GSA1" | n: u64 | n code bytes (1..4) | n suffix positions: u32
"""

from __future__ import annotations

import os
import struct
from pathlib import Path
from typing import Iterable, Literal

import numpy as np

from .errors import BadMagic, CorruptIndex, EmptySequence, InvalidSymbol, MalformedFasta, Truncated
from .sequence import _ENCODE, EncodedSequence, QuerySet
from .suffix_array import MAX_TEXT_LEN, SuffixArray

MAGIC = b"GSA1"
_HEADER = struct.Struct("<4sQ")

Policy = Literal["error", "skip"]


def _encode_bytes(raw: bytes, policy: Policy) -> np.ndarray:
    arr = np.frombuffer(raw, dtype=np.uint8)
    codes = _ENCODE[arr]
    bad = codes == 0
    if bad.any():
        if policy == "error":
            pos = int(np.flatnonzero(bad)[0])
            raise InvalidSymbol(pos, chr(arr[pos]))
        codes = codes[~bad]
    return codes


def _records(path: str | os.PathLike) -> Iterable[tuple[str, list[bytes]]]:
    with open(path, "rb") as fh:
        data = fh.read()
    header = None
    lines: list[bytes] = []
    for lineno, line in enumerate(data.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith(b";"):
            continue
        if line.startswith(b">"):
            if header is not None:
                yield header, lines
            header = line[1:].decode("utf-8", "replace").strip()
            lines = []
        elif header is None:
            raise MalformedFasta(f"{path}: sequence data before the first '>' header (line {lineno})")
        else:
            lines.append(line)
    if header is None:
        raise MalformedFasta(f"{path}: no FASTA record found")
    yield header, lines


def _record_id(header: str) -> str:
    return header.split()[0] if header.split() else ""


def read_fasta(path: str | os.PathLike, policy: Policy = "error") -> tuple[str, EncodedSequence]:
    """Read the first record of a FASTA file.

    ``policy`` decides what happens to symbols outside a/c/g/t (such as N):
    ``"error"`` raises :class:`InvalidSymbol` with the offset inside the
    record's sequence, ``"skip"`` drops them.
    """
    header, lines = next(iter(_records(path)))
    codes = _encode_bytes(b"".join(lines), policy)
    if codes.size == 0:
        raise MalformedFasta(f"{path}: first record has no nucleotides")
    return _record_id(header), EncodedSequence(codes)


def read_queries(path: str | os.PathLike, policy: Policy = "error") -> tuple[list[str], QuerySet]:
    """Read every record of a FASTA file as one query each."""
    ids, seqs = [], []
    for header, lines in _records(path):
        codes = _encode_bytes(b"".join(lines), policy)
        if codes.size == 0:
            raise EmptySequence(f"{path}: record {header!r} is empty")
        ids.append(_record_id(header))
        seqs.append(EncodedSequence(codes))
    return ids, QuerySet.from_sequences(seqs)


def write_fasta(path: str | os.PathLike, records: Iterable[tuple[str, EncodedSequence]], width: int = 80) -> None:
    table = np.frombuffer(b"NACGT", dtype=np.uint8)
    with open(path, "wb") as fh:
        for name, seq in records:
            fh.write(b">" + name.encode() + b"\n")
            raw = table[seq.codes].tobytes()
            for i in range(0, len(raw), width):
                fh.write(raw[i : i + width] + b"\n")


def write_queries(path: str | os.PathLike, queries: QuerySet, prefix: str = "q") -> None:
    write_fasta(path, ((f"{prefix}{i}", q) for i, q in enumerate(queries)))


def write_index(sa: SuffixArray, text: EncodedSequence, path: str | os.PathLike) -> int:
    """Write a GSA1 index file and return its size in bytes."""
    if sa.text_len != text.n:
        raise CorruptIndex(f"suffix array has {sa.text_len} entries, text has {text.n}")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, text.n))
        fh.write(text.codes.tobytes())
        fh.write(sa.sa.astype("<u4", copy=False).tobytes())
    return _HEADER.size + 5 * text.n


def read_index(path: str | os.PathLike) -> tuple[SuffixArray, EncodedSequence]:
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        if MAGIC.startswith(data[:4]):
            raise Truncated(f"{path}: header incomplete ({len(data)} bytes)")
        raise BadMagic(f"{path}: not a GSA1 index")
    magic, n = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise BadMagic(f"{path}: bad magic {magic!r}")
    if n == 0 or n >= MAX_TEXT_LEN:
        raise CorruptIndex(f"{path}: implausible text length {n}")
    expected = _HEADER.size + 5 * n
    if len(data) < expected:
        raise Truncated(f"{path}: expected {expected} bytes, found {len(data)}")
    if len(data) > expected:
        raise CorruptIndex(f"{path}: {len(data) - expected} trailing bytes")
    codes = np.frombuffer(data, dtype=np.uint8, count=n, offset=_HEADER.size)
    if np.any((codes < 1) | (codes > 4)):
        raise CorruptIndex(f"{path}: text contains codes outside 1..4")
    sa = np.frombuffer(data, dtype="<u4", count=n, offset=_HEADER.size + n)
    if np.any(sa >= n) or np.any(np.bincount(sa, minlength=n) != 1):
        raise CorruptIndex(f"{path}: suffix array is not a permutation")
    return SuffixArray(sa.astype(np.uint32)), EncodedSequence(codes)
