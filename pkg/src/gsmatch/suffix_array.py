"""Suffix array construction (DC3 / skew), a brute-force builder and checks.

The DC3 builder works in three steps:

1. Sample suffixes (positions ``i % 3 != 0``) are radix sorted by their
   first three symbols and named by rank. If the names are not unique the
   named string ``R = R1 + R2`` is sorted recursively.
2. Non-sample suffixes are sorted by ``(s[i], rank(i + 1))``.
3. The two sorted lists are merged, comparing a sample suffix ``i`` with a
   non-sample suffix ``j`` by ``(s[i], rank(i + 1))`` when ``i % 3 == 1``
   and by ``(s[i], s[i + 1], rank(i + 2))`` when ``i % 3 == 2``.

The inner loops are numba kernels; the recursion itself is driven from
Python, one level per call of :func:`_skew`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numba
import numpy as np

from .errors import EmptySequence, LengthMismatch, TextTooLong
from .sequence import EncodedSequence

MAX_TEXT_LEN = 2**32 - 3


@dataclass(frozen=True, eq=False)
class SuffixArray:
    """Sorted suffix start positions of a text, as ``uint32``."""

    sa: np.ndarray

    def __post_init__(self):
        sa = np.ascontiguousarray(self.sa, dtype=np.uint32)
        if sa.flags.writeable:
            sa = sa.copy()
            sa.flags.writeable = False
        object.__setattr__(self, "sa", sa)

    @property
    def text_len(self) -> int:
        return int(self.sa.shape[0])

    def __len__(self) -> int:
        return self.text_len

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SuffixArray):
            return NotImplemented
        return np.array_equal(self.sa, other.sa)

    @property
    def nbytes(self) -> int:
        return int(self.sa.nbytes)


@dataclass(frozen=True, eq=False)
class RankArray:
    """Inverse of a suffix array: ``rank[p]`` is where suffix ``p`` sits."""

    rank: np.ndarray

    def __len__(self) -> int:
        return int(self.rank.shape[0])


@dataclass
class Dc3Trace:
    """Intermediate state of one top-level DC3 run, for inspection.

    ``sample_ranks`` maps each sample position to its 1-based rank among
    the sample suffixes; ``full_rank_1based[p]`` is the 1-based rank of
    suffix ``p`` in the final order.
    """

    sample_positions: list[int]
    sample_ranks: dict[int, int]
    nonsample_order: list[int]
    full_rank_1based: list[int] = field(default_factory=list)
    levels: int = 1


@dataclass(frozen=True)
class Verdict:
    ok: bool
    index: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


# --- numba kernels -------------------------------------------------------


@numba.njit(cache=True, nogil=True)
def _radix_pass(src, dst, s, offset, count, K):
    """Stable counting sort of ``src[:count]`` by key ``s[src[i] + offset]``."""
    c = np.zeros(K + 1, dtype=np.int64)
    for i in range(count):
        c[s[src[i] + offset]] += 1
    total = 0
    for k in range(K + 1):
        t = c[k]
        c[k] = total
        total += t
    for i in range(count):
        key = s[src[i] + offset]
        dst[c[key]] = src[i]
        c[key] += 1


@numba.njit(cache=True, nogil=True)
def _name_triples(sa12, s, s12, n02, n0):
    """Rank sorted sample triples; equal triples share a name."""
    name = 0
    c0 = -1
    c1 = -1
    c2 = -1
    for i in range(n02):
        p = sa12[i]
        if s[p] != c0 or s[p + 1] != c1 or s[p + 2] != c2:
            name += 1
            c0 = s[p]
            c1 = s[p + 1]
            c2 = s[p + 2]
        if p % 3 == 1:
            s12[p // 3] = name
        else:
            s12[p // 3 + n0] = name
    return name


@numba.njit(cache=True, nogil=True)
def _leq2(a1, a2, b1, b2):
    return a1 < b1 or (a1 == b1 and a2 <= b2)


@numba.njit(cache=True, nogil=True)
def _leq3(a1, a2, a3, b1, b2, b3):
    return a1 < b1 or (a1 == b1 and _leq2(a2, a3, b2, b3))


@numba.njit(cache=True, nogil=True)
def _merge(s, s12, sa12, sa0, n, n0, n1, n02, out):
    p = 0
    t = n0 - n1
    k = 0
    while k < n:
        q = sa12[t]
        i = q * 3 + 1 if q < n0 else (q - n0) * 3 + 2
        j = sa0[p]
        if q < n0:
            sample_first = _leq2(s[i], s12[q + n0], s[j], s12[j // 3])
        else:
            sample_first = _leq3(s[i], s[i + 1], s12[q - n0 + 1], s[j], s[j + 1], s12[j // 3 + n0])
        if sample_first:
            out[k] = i
            t += 1
            if t == n02:
                k += 1
                while p < n0:
                    out[k] = sa0[p]
                    p += 1
                    k += 1
                break
        else:
            out[k] = j
            p += 1
            if p == n0:
                k += 1
                while t < n02:
                    q = sa12[t]
                    out[k] = q * 3 + 1 if q < n0 else (q - n0) * 3 + 2
                    t += 1
                    k += 1
                break
        k += 1


@numba.njit(cache=True, nogil=True)
def _first_unsorted(codes, sa):
    """Index ``i`` of the first pair with ``suffix(sa[i]) >= suffix(sa[i+1])``, else -1."""
    n = codes.shape[0]
    for i in range(n - 1):
        a = np.int64(sa[i])
        b = np.int64(sa[i + 1])
        while a < n and b < n and codes[a] == codes[b]:
            a += 1
            b += 1
        if a == n and b < n:
            continue
        if a < n and b < n and codes[a] < codes[b]:
            continue
        return i
    return -1


# --- construction --------------------------------------------------------


def _skew(s: np.ndarray, n: int, K: int, trace: dict | None = None, depth: int = 1) -> np.ndarray:
    """Suffix array of ``s[:n]`` over symbols ``1..K``; ``s`` carries 3 trailing zeros."""
    dt = np.int32 if n < 2**31 - 4 else np.int64
    if n == 1:
        return np.zeros(1, dtype=dt)
    n0 = (n + 2) // 3
    n1 = (n + 1) // 3
    n2 = n // 3
    n02 = n0 + n2

    # B1 positions first, then B2; n % 3 == 1 adds the padded sample at n.
    b1 = np.arange(1, n + (n0 - n1), 3, dtype=dt)
    b2 = np.arange(2, n + (n0 - n1), 3, dtype=dt)
    sample = np.concatenate((b1, b2))
    tmp = np.empty(n02, dtype=dt)
    sa12 = np.zeros(n02 + 3, dtype=dt)
    _radix_pass(sample, tmp, s, 2, n02, K)
    _radix_pass(tmp, sa12, s, 1, n02, K)
    _radix_pass(sa12[:n02].copy(), tmp, s, 0, n02, K)
    sa12[:n02] = tmp

    s12 = np.zeros(n02 + 3, dtype=dt)
    name = _name_triples(sa12, s, s12, n02, n0)
    if name < n02:
        sub = _skew(s12, n02, name, trace, depth + 1)
        sa12[:n02] = sub
        s12[sub] = np.arange(1, n02 + 1, dtype=dt)
    else:
        sa12[s12[:n02] - 1] = np.arange(n02, dtype=dt)

    # B0 positions in the order of their successor's rank, then by first symbol.
    succ = sa12[:n02]
    s0 = 3 * succ[succ < n0]
    sa0 = np.empty(n0, dtype=dt)
    _radix_pass(s0, sa0, s, 0, n0, K)

    out = np.empty(n, dtype=dt)
    _merge(s, s12, sa12, sa0, n, n0, n1, n02, out)

    if trace is not None:
        trace["levels"] = max(trace.get("levels", 1), depth)
        if depth == 1:
            pad = n0 - n1
            ranks = {}
            for k in range(n02):
                pos = 3 * k + 1 if k < n0 else 3 * (k - n0) + 2
                if pos < n:
                    ranks[pos] = int(s12[k]) - pad
            trace["sample_positions"] = [int(p) for p in sample if p < n]
            trace["sample_ranks"] = dict(sorted(ranks.items()))
            trace["nonsample_order"] = [int(p) for p in sa0]
    return out


def _padded_codes(seq: EncodedSequence) -> np.ndarray:
    n = seq.n
    if n < 1:
        raise EmptySequence("cannot index an empty sequence")
    if n >= MAX_TEXT_LEN:
        raise TextTooLong(f"text of {n} symbols does not fit 32-bit positions")
    s = np.zeros(n + 3, dtype=np.uint8)
    s[:n] = seq.codes
    return s


def build_dc3(seq: EncodedSequence) -> SuffixArray:
    """Build the suffix array of ``seq`` in linear time with DC3."""
    s = _padded_codes(seq)
    return SuffixArray(_skew(s, seq.n, 4).astype(np.uint32))


def build_dc3_trace(seq: EncodedSequence) -> Dc3Trace:
    """Run DC3 and keep the top-level sample ranks and non-sample order."""
    s = _padded_codes(seq)
    state: dict = {}
    sa = _skew(s, seq.n, 4, state)
    if "sample_ranks" not in state:
        # n == 1 never reaches the sampling step
        state.update(sample_positions=[], sample_ranks={}, nonsample_order=[0])
    rank = np.empty(seq.n, dtype=np.int64)
    rank[sa] = np.arange(1, seq.n + 1)
    return Dc3Trace(
        sample_positions=state["sample_positions"],
        sample_ranks=state["sample_ranks"],
        nonsample_order=state["nonsample_order"],
        full_rank_1based=rank.tolist(),
        levels=state.get("levels", 1),
    )


def build_naive(seq: EncodedSequence) -> SuffixArray:
    """Comparison-sort every suffix directly. Quadratic memory; for tests."""
    if seq.n < 1:
        raise EmptySequence("cannot index an empty sequence")
    buf = seq.tobytes()
    return SuffixArray(np.array(sorted(range(len(buf)), key=lambda i: buf[i:]), dtype=np.uint32))


def rank_array(sa: SuffixArray) -> RankArray:
    rank = np.empty(sa.text_len, dtype=np.int64)
    rank[sa.sa.astype(np.int64)] = np.arange(sa.text_len, dtype=np.int64)
    rank.flags.writeable = False
    return RankArray(rank)


def verify(sa: SuffixArray, seq: EncodedSequence) -> Verdict:
    """Check that ``sa`` is a permutation and sorts the suffixes of ``seq``."""
    if sa.text_len != seq.n:
        raise LengthMismatch(f"suffix array has {sa.text_len} entries, text has {seq.n}")
    n = seq.n
    pos = sa.sa.astype(np.int64)
    out_of_range = np.flatnonzero(pos >= n)
    if out_of_range.size:
        return Verdict(False, int(out_of_range[0]), "position out of range")
    _, first_idx = np.unique(pos, return_index=True)
    if first_idx.size != n:
        # report the earliest entry that repeats an earlier value
        seen = np.zeros(n, dtype=bool)
        seen[first_idx] = True
        return Verdict(False, int(np.flatnonzero(~seen)[0]), "not a permutation")
    bad = _first_unsorted(seq.codes, sa.sa)
    if bad >= 0:
        return Verdict(False, int(bad), "suffixes out of order")
    return Verdict(True)
