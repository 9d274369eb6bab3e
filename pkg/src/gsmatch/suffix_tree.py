"""Flattened suffix tree built with Ukkonen's online algorithm.

The tree lives in four parallel node arrays rather than linked objects:

  edge_start, edge_end  half-open label ``text[edge_start:edge_end]`` of the
                        edge entering the node (root: empty)
  child                 ``(nodes, 5)`` table indexed by code 0..4, where
                        code 0 is the sentinel; 0 means "no child" because
                        the root (node 0) is never anybody's child
  leaf_suffix           start position of the suffix spelled by a leaf,
                        ``NO_SUFFIX`` for internal nodes

Every record is 32 bytes. Suffix links are only needed while building and
are dropped afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numba
import numpy as np

from .errors import EmptySequence, InvalidNode, TextTooLong
from .sequence import EncodedSequence

NO_SUFFIX = np.uint32(0xFFFFFFFF)
SENTINEL = 0
FANOUT = 5
# node ids are uint32 and a tree over n symbols has at most 2n + 1 nodes
MAX_TREE_TEXT_LEN = 2**31 - 2


class NodeRecord(NamedTuple):
    edge_start: int
    edge_end: int
    child: tuple[int | None, ...]
    leaf_suffix: int | None


@dataclass(frozen=True, eq=False)
class FlatSuffixTree:
    text: np.ndarray  # codes followed by the sentinel, length n + 1
    edge_start: np.ndarray
    edge_end: np.ndarray
    child: np.ndarray
    leaf_suffix: np.ndarray
    root: int = 0

    @property
    def text_len(self) -> int:
        return int(self.text.shape[0] - 1)

    @property
    def node_count(self) -> int:
        return int(self.edge_start.shape[0])

    @property
    def nbytes(self) -> int:
        return int(self.edge_start.nbytes + self.edge_end.nbytes + self.child.nbytes + self.leaf_suffix.nbytes)

    def is_leaf(self, node: int) -> bool:
        self._check(node)
        return bool(self.leaf_suffix[node] != NO_SUFFIX)

    def children(self, node: int) -> dict[int, int]:
        """Map first code -> child node for ``node``."""
        self._check(node)
        return {c: int(v) for c, v in enumerate(self.child[node]) if v != 0}

    def label(self, node: int) -> np.ndarray:
        self._check(node)
        return self.text[self.edge_start[node] : self.edge_end[node]]

    def node(self, node: int) -> NodeRecord:
        self._check(node)
        leaf = self.leaf_suffix[node]
        return NodeRecord(
            int(self.edge_start[node]),
            int(self.edge_end[node]),
            tuple(int(v) if v else None for v in self.child[node]),
            None if leaf == NO_SUFFIX else int(leaf),
        )

    def suffix_order(self) -> np.ndarray:
        """Leaf suffixes in lexicographic order, sentinel leaf excluded.

        Children are visited by increasing code and the sentinel is the
        smallest code, so this is the suffix array of the text.
        """
        return _ordered_leaves(self.child, self.leaf_suffix, self.text_len)

    def _check(self, node: int) -> None:
        if not 0 <= node < self.node_count:
            raise InvalidNode(f"node {node} not in tree of {self.node_count} nodes")


@numba.njit(cache=True, nogil=True)
def _ukkonen(t):
    N = t.shape[0]
    cap = 2 * N + 1
    start = np.zeros(cap, dtype=np.uint32)
    end = np.zeros(cap, dtype=np.uint32)
    child = np.zeros((cap, 5), dtype=np.uint32)
    link = np.zeros(cap, dtype=np.uint32)
    leaf = np.full(cap, 0xFFFFFFFF, dtype=np.uint32)
    count = 1  # node 0 is the root

    active_node = 0
    active_edge = 0
    active_length = 0
    remainder = 0
    for i in range(N):
        remainder += 1
        last_new = 0
        while remainder > 0:
            if active_length == 0:
                active_edge = i
            c = t[active_edge]
            nxt = np.int64(child[active_node, c])
            if nxt == 0:
                # new leaf hanging from the active node
                start[count] = i
                end[count] = N
                leaf[count] = i - remainder + 1
                child[active_node, c] = count
                count += 1
                if last_new != 0:
                    link[last_new] = active_node
                    last_new = 0
            else:
                elen = min(np.int64(end[nxt]), i + 1) - np.int64(start[nxt])
                if active_length >= elen:
                    active_edge += elen
                    active_length -= elen
                    active_node = nxt
                    continue
                if t[start[nxt] + active_length] == t[i]:
                    if last_new != 0 and active_node != 0:
                        link[last_new] = active_node
                        last_new = 0
                    active_length += 1
                    break
                split = count
                start[split] = start[nxt]
                end[split] = start[nxt] + active_length
                child[active_node, c] = split
                lf = count + 1
                start[lf] = i
                end[lf] = N
                leaf[lf] = i - remainder + 1
                child[split, t[i]] = lf
                start[nxt] += active_length
                child[split, t[start[nxt]]] = nxt
                count += 2
                if last_new != 0:
                    link[last_new] = split
                last_new = split
            remainder -= 1
            if active_node == 0 and active_length > 0:
                active_length -= 1
                active_edge = i - remainder + 1
            elif active_node != 0:
                active_node = np.int64(link[active_node])
    return start[:count].copy(), end[:count].copy(), child[:count].copy(), leaf[:count].copy()


@numba.njit(cache=True, nogil=True)
def _subtree_leaves(child, leaf, node, n, stack):
    """Suffix positions below ``node``, skipping the sentinel-only leaf."""
    out = np.empty(stack.shape[0], dtype=np.int64)
    k = 0
    top = 0
    stack[0] = node
    top = 1
    while top > 0:
        top -= 1
        v = stack[top]
        s = leaf[v]
        if s != 0xFFFFFFFF:
            if s != n:
                out[k] = s
                k += 1
            continue
        for c in range(5):
            w = child[v, c]
            if w != 0:
                stack[top] = w
                top += 1
    return out[:k]


@numba.njit(cache=True, nogil=True)
def _ordered_leaves(child, leaf, n):
    stack = np.empty(child.shape[0], dtype=np.int64)
    out = np.empty(n, dtype=np.int64)
    k = 0
    stack[0] = 0
    top = 1
    while top > 0:
        top -= 1
        v = stack[top]
        s = leaf[v]
        if s != 0xFFFFFFFF:
            if s != n:
                out[k] = s
                k += 1
            continue
        for c in range(4, -1, -1):
            w = child[v, c]
            if w != 0:
                stack[top] = w
                top += 1
    return out


def build_tree(seq: EncodedSequence) -> FlatSuffixTree:
    """Build the suffix tree of ``seq`` plus a terminating sentinel."""
    n = seq.n
    if n < 1:
        raise EmptySequence("cannot index an empty sequence")
    if n > MAX_TREE_TEXT_LEN:
        raise TextTooLong(f"text of {n} symbols exceeds the 32-bit node id range")
    text = np.zeros(n + 1, dtype=np.uint8)
    text[:n] = seq.codes
    text.flags.writeable = False
    arrays = _ukkonen(text)
    for a in arrays:
        a.flags.writeable = False
    return FlatSuffixTree(text, *arrays)


def collect_occurrences(tree: FlatSuffixTree, node: int) -> set[int]:
    """All suffix start positions in the subtree of ``node``."""
    tree._check(node)
    stack = np.empty(tree.node_count, dtype=np.int64)
    return set(_subtree_leaves(tree.child, tree.leaf_suffix, node, tree.text_len, stack).tolist())


def tree_stats(tree: FlatSuffixTree) -> dict[str, int]:
    """Node census and exact node-array size; the root counts as internal."""
    leaves = int(np.count_nonzero(tree.leaf_suffix != NO_SUFFIX))
    return {
        "node_count": tree.node_count,
        "leaf_count": leaves,
        "internal_count": tree.node_count - leaves,
        "bytes": tree.nbytes,
    }
