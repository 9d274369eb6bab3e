"""Many queries against one shared index, split across worker threads.

Results use a flat layout: ``flat[2q]`` is the left boundary and
``flat[2q + 1]`` the right boundary of query ``q``, ``(-1, -1)`` when the
query does not occur. Queries are cut into contiguous blocks, one per
worker; every worker writes only its own block's slots, and the kernels
release the GIL so the threads really run side by side.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal, NamedTuple

import numba
import numpy as np

from .search import DEFAULT_TILE_LEN, _lower, _tree_walk, _upper
from .sequence import EncodedSequence, QuerySet
from .suffix_array import RankArray, SuffixArray, rank_array
from .suffix_tree import FlatSuffixTree

Backend = Literal["suffix_array", "suffix_tree"]


@dataclass(frozen=True)
class MatcherConfig:
    workers: int = 1
    tile_len: int = DEFAULT_TILE_LEN
    backend: Backend = "suffix_array"

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.tile_len < 1:
            raise ValueError(f"tile_len must be >= 1, got {self.tile_len}")
        if self.backend not in ("suffix_array", "suffix_tree"):
            raise ValueError(f"unknown backend {self.backend!r}")


@dataclass(frozen=True, eq=False)
class BatchResult:
    flat: np.ndarray  # int64, length 2 * query_count

    @property
    def query_count(self) -> int:
        return int(self.flat.shape[0] // 2)

    def bounds(self, q: int) -> tuple[int, int]:
        return int(self.flat[2 * q]), int(self.flat[2 * q + 1])

    def hits(self) -> int:
        return int(np.count_nonzero(self.flat[0::2] >= 0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BatchResult):
            return NotImplemented
        return np.array_equal(self.flat, other.flat)


class ResultRow(NamedTuple):
    query_id: int
    lb: int
    rb: int
    count: int
    positions: list[int] | None


@numba.njit(cache=True, nogil=True)
def _sa_block(text, sa, qcodes, offsets, q0, q1, tile, flat):
    mid = np.empty(tile, dtype=np.uint8)
    qry = np.empty(tile, dtype=np.uint8)
    for q in range(q0, q1):
        p0 = offsets[q]
        m = offsets[q + 1] - p0
        lb, _ = _lower(text, sa, qcodes, p0, m, tile, mid, qry)
        if lb < 0:
            flat[2 * q] = -1
            flat[2 * q + 1] = -1
            continue
        rb, _ = _upper(text, sa, qcodes, p0, m, tile, mid, qry)
        flat[2 * q] = lb
        flat[2 * q + 1] = rb


@numba.njit(cache=True, nogil=True)
def _tree_block(text, child, estart, eend, leaf, rank, qcodes, offsets, q0, q1, flat):
    n = text.shape[0] - 1
    stack = np.empty(child.shape[0], dtype=np.int64)
    for q in range(q0, q1):
        p0 = offsets[q]
        m = offsets[q + 1] - p0
        node = _tree_walk(text, child, estart, eend, qcodes, p0, m)
        lo = -1
        hi = -1
        if node >= 0:
            # collapse the subtree's occurrence set to its extreme ranks
            stack[0] = node
            top = 1
            while top > 0:
                top -= 1
                v = stack[top]
                s = leaf[v]
                if s != 0xFFFFFFFF:
                    if s != n:
                        r = rank[s]
                        if lo < 0 or r < lo:
                            lo = r
                        if r > hi:
                            hi = r
                    continue
                for c in range(5):
                    w = child[v, c]
                    if w != 0:
                        stack[top] = w
                        top += 1
        flat[2 * q] = lo
        flat[2 * q + 1] = hi


def _blocks(count: int, workers: int) -> list[tuple[int, int]]:
    edges = np.linspace(0, count, min(workers, count) + 1).round().astype(np.int64)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def match_batch(
    index: SuffixArray | FlatSuffixTree,
    text: EncodedSequence,
    queries: QuerySet,
    cfg: MatcherConfig = MatcherConfig(),
    rank: RankArray | None = None,
) -> BatchResult:
    """Find the suffix-array interval of every query.

    With the tree backend the occurrence set of each query is mapped to
    suffix-array bounds through ``rank``; when no rank array is given it is
    derived from the tree's own leaf order.
    """
    queries.check_matchable()
    flat = np.empty(2 * len(queries), dtype=np.int64)
    qcodes, offsets = queries.codes, queries.offsets

    if cfg.backend == "suffix_array":
        if not isinstance(index, SuffixArray):
            raise TypeError("suffix_array backend needs a SuffixArray index")
        args = (text.codes, index.sa, qcodes, offsets)
        tail = (cfg.tile_len, flat)
        kernel = _sa_block
    else:
        if not isinstance(index, FlatSuffixTree):
            raise TypeError("suffix_tree backend needs a FlatSuffixTree index")
        if rank is None:
            rank = rank_array(SuffixArray(index.suffix_order()))
        args = (index.text, index.child, index.edge_start, index.edge_end, index.leaf_suffix, rank.rank, qcodes, offsets)
        tail = (flat,)
        kernel = _tree_block

    blocks = _blocks(len(queries), cfg.workers)
    if len(blocks) == 1:
        kernel(*args, *blocks[0], *tail)
    else:
        with ThreadPoolExecutor(max_workers=len(blocks)) as pool:
            futures = [pool.submit(kernel, *args, q0, q1, *tail) for q0, q1 in blocks]
            for f in futures:
                f.result()
    flat.flags.writeable = False
    return BatchResult(flat)


def result_rows(res: BatchResult, sa: SuffixArray, with_positions: bool = False) -> list[ResultRow]:
    rows = []
    for q in range(res.query_count):
        lb, rb = res.bounds(q)
        if lb < 0:
            rows.append(ResultRow(q, -1, -1, 0, [] if with_positions else None))
            continue
        positions = sa.sa[lb : rb + 1].astype(np.int64).tolist() if with_positions else None
        rows.append(ResultRow(q, lb, rb, rb - lb + 1, positions))
    return rows
