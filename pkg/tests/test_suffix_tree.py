import numpy as np
import pytest
from conftest import random_codes

import oracles
from gsmatch import build_dc3, build_tree, collect_occurrences, decode_sequence, encode_sequence, tree_stats
from gsmatch.errors import EmptySequence, InvalidNode, TextTooLong
from gsmatch.suffix_tree import MAX_TREE_TEXT_LEN, NO_SUFFIX

SYMBOLS = "$acgt"


def locus(tree, pattern):
    """Node just below the point where reading ``pattern`` from the root stops."""
    node, i = 0, 0
    codes = encode_sequence(pattern).codes.tolist()
    while i < len(codes):
        node = tree.children(node)[codes[i]]
        label = tree.label(node).tolist()
        assert label[: len(codes) - i] == codes[i : i + len(label)]
        i += len(label)
    return node


def path_labels(tree):
    internal, leaves = set(), set()
    stack = [(0, "")]
    while stack:
        node, prefix = stack.pop()
        label = prefix + "".join(SYMBOLS[c] for c in tree.label(node))
        if tree.is_leaf(node):
            leaves.add(label)
        else:
            internal.add(label)
            stack.extend((child, label) for child in tree.children(node).values())
    return internal, leaves


def check_structure(tree):
    n = tree.text_len
    stats = tree_stats(tree)
    assert stats["leaf_count"] == n + 1
    assert stats["node_count"] == stats["leaf_count"] + stats["internal_count"]
    for v in range(tree.node_count):
        kids = tree.children(v)
        if tree.is_leaf(v):
            assert not kids
        else:
            assert 2 <= len(kids) <= 5
            for code, child in kids.items():
                assert tree.text[tree.edge_start[child]] == code
    suffixes = {int(s) for s in tree.leaf_suffix if s != NO_SUFFIX}
    assert suffixes == set(range(n + 1))


def test_paper_example_shape(paper_text):
    tree = build_tree(paper_text)
    check_structure(tree)
    assert tree_stats(tree)["leaf_count"] == 12
    assert sorted(tree.children(tree.root)) == [0, 1, 2, 3, 4]


def test_single_symbol():
    tree = build_tree(encode_sequence("a"))
    assert tree_stats(tree)["node_count"] == 3
    kids = tree.children(0)
    assert sorted(kids) == [0, 1]
    assert all(tree.is_leaf(v) for v in kids.values())
    assert decode_sequence(tree.label(kids[1])[:1]) == "a"


def test_unary_text_is_a_path():
    tree = build_tree(encode_sequence("aaaa"))
    check_structure(tree)
    internal = [v for v in range(tree.node_count) if not tree.is_leaf(v)]
    assert all(len(tree.children(v)) == 2 for v in internal)
    expected_internal, expected_leaves = oracles.compact_trie_labels("aaaa")
    assert path_labels(tree) == (expected_internal, expected_leaves)


@pytest.mark.parametrize("text", ["acggtacgtac", "agccgccgttg", "acacacac", "gattaca"])
def test_matches_brute_force_trie(text):
    assert path_labels(build_tree(encode_sequence(text))) == oracles.compact_trie_labels(text)


def test_random_texts_match_trie(rng):
    for _ in range(60):
        text = oracles.random_dna(rng, rng.randint(1, 40), rng.choice(["acgt", "ac", "a"]))
        assert path_labels(build_tree(encode_sequence(text))) == oracles.compact_trie_labels(text)


def test_structure_random():
    gen = np.random.default_rng(5)
    for _ in range(40):
        check_structure(build_tree(random_codes(gen, int(gen.integers(1, 600)), int(gen.integers(1, 5)))))


def test_suffix_order_is_suffix_array():
    gen = np.random.default_rng(9)
    for _ in range(30):
        seq = random_codes(gen, int(gen.integers(1, 800)), int(gen.integers(1, 5)))
        assert build_tree(seq).suffix_order().tolist() == build_dc3(seq).sa.tolist()


def test_collect_from_root(paper_text):
    tree = build_tree(paper_text)
    assert collect_occurrences(tree, tree.root) == set(range(11))


@pytest.mark.parametrize("pattern, expected", [("a", {0, 5, 9}), ("ggtac", {2}), ("c", {1, 6, 10})])
def test_collect_below_paths(paper_text, pattern, expected):
    tree = build_tree(paper_text)
    assert collect_occurrences(tree, locus(tree, pattern)) == expected


def test_collect_invalid_node(paper_text):
    tree = build_tree(paper_text)
    with pytest.raises(InvalidNode):
        collect_occurrences(tree, tree.node_count)
    with pytest.raises(InvalidNode):
        collect_occurrences(tree, -1)


def test_stats_bytes_are_32_per_node(paper_text):
    tree = build_tree(paper_text)
    stats = tree_stats(tree)
    assert stats["bytes"] == 32 * stats["node_count"]


def test_node_record(paper_text):
    tree = build_tree(paper_text)
    rec = tree.node(0)
    assert rec.leaf_suffix is None
    assert len(rec.child) == 5
    leaf = tree.children(0)[0]
    assert tree.node(leaf).leaf_suffix == 11  # the sentinel-only leaf


def test_empty_and_too_long():
    with pytest.raises(EmptySequence):
        build_tree(encode_sequence("a")[:0])

    class Huge:
        n = MAX_TREE_TEXT_LEN + 1

    with pytest.raises(TextTooLong):
        build_tree(Huge())


@pytest.mark.slow
def test_million_symbols_tree_larger_than_sa():
    seq = random_codes(np.random.default_rng(77), 1_000_000)
    tree = build_tree(seq)
    sa = build_dc3(seq)
    assert tree_stats(tree)["leaf_count"] == 1_000_001
    assert tree_stats(tree)["bytes"] > sa.nbytes
