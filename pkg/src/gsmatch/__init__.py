"""Suffix-array and suffix-tree exact matching for DNA references."""

from .batch import BatchResult, MatcherConfig, ResultRow, match_batch, result_rows
from .errors import *  # noqa: F401,F403
from .io import read_fasta, read_index, read_queries, write_fasta, write_index, write_queries
from .querygen import QueryGenSpec, gen_queries
from .search import (
    MatchRange,
    PrefixOrder,
    SearchConfig,
    find_lb,
    find_range,
    find_rb,
    prefix_compare,
    tree_find,
)
from .sequence import DNA, Alphabet, EncodedSequence, QuerySet, decode_sequence, encode_sequence
from .suffix_array import (
    Dc3Trace,
    RankArray,
    SuffixArray,
    Verdict,
    build_dc3,
    build_dc3_trace,
    build_naive,
    rank_array,
    verify,
)
from .suffix_tree import FlatSuffixTree, build_tree, collect_occurrences, tree_stats

__version__ = "0.1.0"
