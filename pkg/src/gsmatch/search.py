"""Exact-match range search over a suffix array, and the tree-walk equivalent.

All suffixes that start with a pattern ``P`` occupy one contiguous block
``sa[lb..rb]``. Both ends are found with a binary search whose probe
compares ``P`` against the probed suffix one tile (``tile_len`` symbols) at
a time, staging each tile in small scratch buffers before comparing.

Both searches keep a half-open window ``(L, R)`` that starts at the virtual
positions ``L = -1`` and ``R = n``, so hits at index 0 or ``n - 1`` need no
special casing. Each search probes at most ``ceil(log2(n + 2))`` times.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numba
import numpy as np

from .errors import EmptyPattern, LengthMismatch, OutOfBounds
from .sequence import EncodedSequence
from .suffix_array import SuffixArray
from .suffix_tree import FlatSuffixTree, collect_occurrences

DEFAULT_TILE_LEN = 64


class PrefixOrder(enum.IntEnum):
    """Order of a pattern relative to a suffix truncated to the pattern's length."""

    LESS = -1
    PREFIX_EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class SearchConfig:
    tile_len: int = DEFAULT_TILE_LEN

    def __post_init__(self):
        if int(self.tile_len) < 1:
            raise ValueError(f"tile_len must be >= 1, got {self.tile_len}")


@dataclass(frozen=True)
class MatchRange:
    lb: int
    rb: int

    @property
    def count(self) -> int:
        return self.rb - self.lb + 1

    def positions(self, sa: SuffixArray) -> list[int]:
        """Occurrence start positions, in suffix-array order."""
        return sa.sa[self.lb : self.rb + 1].astype(np.int64).tolist()


def pivot_bound(n: int) -> int:
    return math.ceil(math.log2(n + 2))


# --- kernels -------------------------------------------------------------


@numba.njit(cache=True, nogil=True)
def _prefix_cmp(text, pat, p0, m, pos, tile, mid, qry):
    """-1 if pattern < suffix(pos), 0 if it is a prefix of it, 1 if greater."""
    n = text.shape[0]
    k = 0
    while k < m:
        stop = min(k + tile, m)
        width = stop - k
        avail = min(width, n - (pos + k))
        for j in range(avail):
            mid[j] = text[pos + k + j]
        for j in range(width):
            qry[j] = pat[p0 + k + j]
        for j in range(avail):
            if mid[j] != qry[j]:
                return -1 if qry[j] < mid[j] else 1
        if avail < width:
            # suffix ran out while equal so far: it is a proper prefix of P
            return 1
        k = stop
    return 0


@numba.njit(cache=True, nogil=True)
def _lower(text, sa, pat, p0, m, tile, mid, qry):
    n = sa.shape[0]
    lo = -1
    hi = n
    pivots = 0
    while hi > lo + 1:
        pivot = (lo + hi) >> 1
        pivots += 1
        if _prefix_cmp(text, pat, p0, m, np.int64(sa[pivot]), tile, mid, qry) <= 0:
            hi = pivot
        else:
            lo = pivot
    if hi < n and _prefix_cmp(text, pat, p0, m, np.int64(sa[hi]), tile, mid, qry) == 0:
        return hi, pivots
    return -1, pivots


@numba.njit(cache=True, nogil=True)
def _upper(text, sa, pat, p0, m, tile, mid, qry):
    n = sa.shape[0]
    lo = -1
    hi = n
    pivots = 0
    while hi > lo + 1:
        pivot = (lo + hi) >> 1
        pivots += 1
        if _prefix_cmp(text, pat, p0, m, np.int64(sa[pivot]), tile, mid, qry) < 0:
            hi = pivot
        else:
            lo = pivot
    if lo >= 0 and _prefix_cmp(text, pat, p0, m, np.int64(sa[lo]), tile, mid, qry) == 0:
        return lo, pivots
    return -1, pivots


@numba.njit(cache=True, nogil=True)
def _tree_walk(text, child, estart, eend, pat, p0, m):
    """Node whose subtree holds every suffix prefixed by the pattern, or -1."""
    node = 0
    i = 0
    while i < m:
        nxt = np.int64(child[node, pat[p0 + i]])
        if nxt == 0:
            return -1
        k = np.int64(estart[nxt])
        stop = np.int64(eend[nxt])
        while k < stop and i < m:
            if text[k] != pat[p0 + i]:
                return -1
            k += 1
            i += 1
        node = nxt
    return node


# --- public API ----------------------------------------------------------


def _scratch(cfg: SearchConfig) -> tuple[np.ndarray, np.ndarray]:
    return np.empty(cfg.tile_len, dtype=np.uint8), np.empty(cfg.tile_len, dtype=np.uint8)


def _pattern_codes(pattern: EncodedSequence) -> np.ndarray:
    if pattern.n == 0:
        raise EmptyPattern()
    return pattern.codes


def prefix_compare(
    pattern: EncodedSequence, text: EncodedSequence, suffix_pos: int, cfg: SearchConfig = SearchConfig()
) -> PrefixOrder:
    pat = _pattern_codes(pattern)
    if not 0 <= suffix_pos < text.n:
        raise OutOfBounds(f"suffix position {suffix_pos} outside text of length {text.n}")
    mid, qry = _scratch(cfg)
    return PrefixOrder(_prefix_cmp(text.codes, pat, 0, pat.size, suffix_pos, cfg.tile_len, mid, qry))


def boundary_search(
    sa: SuffixArray, text: EncodedSequence, pattern: EncodedSequence, cfg: SearchConfig, side: str
) -> tuple[int | None, int]:
    """Run one boundary search and also report how many pivots it probed."""
    pat = _pattern_codes(pattern)
    mid, qry = _scratch(cfg)
    kernel = {"lb": _lower, "rb": _upper}[side]
    idx, pivots = kernel(text.codes, sa.sa, pat, 0, pat.size, cfg.tile_len, mid, qry)
    return (None if idx < 0 else int(idx)), int(pivots)


def find_lb(
    sa: SuffixArray, text: EncodedSequence, pattern: EncodedSequence, cfg: SearchConfig = SearchConfig()
) -> int | None:
    return boundary_search(sa, text, pattern, cfg, "lb")[0]


def find_rb(
    sa: SuffixArray, text: EncodedSequence, pattern: EncodedSequence, cfg: SearchConfig = SearchConfig()
) -> int | None:
    return boundary_search(sa, text, pattern, cfg, "rb")[0]


def find_range(
    sa: SuffixArray, text: EncodedSequence, pattern: EncodedSequence, cfg: SearchConfig = SearchConfig()
) -> MatchRange | None:
    """Suffix-array interval of all suffixes starting with ``pattern``."""
    lb = find_lb(sa, text, pattern, cfg)
    if lb is None:
        return None
    rb = find_rb(sa, text, pattern, cfg)
    return MatchRange(lb, rb)


def tree_find(tree: FlatSuffixTree, text: EncodedSequence, pattern: EncodedSequence) -> set[int]:
    """Occurrence positions of ``pattern`` by walking the suffix tree."""
    pat = _pattern_codes(pattern)
    if text.n != tree.text_len:
        raise LengthMismatch(f"tree indexes {tree.text_len} symbols, text has {text.n}")
    node = _tree_walk(tree.text, tree.child, tree.edge_start, tree.edge_end, pat, 0, pat.size)
    if node < 0:
        return set()
    return collect_occurrences(tree, int(node))
