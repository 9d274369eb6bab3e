import random

import numpy as np
import pytest
from conftest import PAPER_SA, random_codes
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from gsmatch import (
    SuffixArray,
    build_dc3,
    build_dc3_trace,
    build_naive,
    encode_sequence,
    rank_array,
    verify,
)
from gsmatch.errors import EmptySequence, LengthMismatch, TextTooLong
from gsmatch.suffix_array import MAX_TEXT_LEN


@pytest.mark.parametrize("build", [build_dc3, build_naive])
def test_paper_table(build, paper_text):
    assert build(paper_text).sa.tolist() == PAPER_SA


@pytest.mark.parametrize(
    "text, expected",
    [
        ("a", [0]),
        ("aaaa", [3, 2, 1, 0]),
        ("tgca", [3, 2, 1, 0]),  # a < ca < gca < tgca
        ("ta", [1, 0]),
    ],
)
@pytest.mark.parametrize("build", [build_dc3, build_naive])
def test_small_examples(build, text, expected):
    assert expected == oracles.suffix_array(text)
    assert build(encode_sequence(text)).sa.tolist() == expected


def test_dtype_is_uint32(paper_text):
    sa = build_dc3(paper_text)
    assert sa.sa.dtype == np.uint32
    assert sa.text_len == 11


def test_trace_matches_tables(paper_text):
    trace = build_dc3_trace(paper_text)
    assert trace.sample_positions == [1, 4, 7, 10, 2, 5, 8]
    assert trace.sample_ranks == {1: 3, 2: 4, 4: 7, 5: 1, 7: 5, 8: 6, 10: 2}
    assert trace.full_rank_1based == [2, 5, 7, 9, 11, 3, 6, 8, 10, 1, 4]
    assert trace.nonsample_order == [9, 0, 6, 3]


@pytest.mark.parametrize("n", [3, 4, 5, 7, 10, 13, 31, 100])
def test_trace_invariants(n):
    gen = np.random.default_rng(n)
    seq = random_codes(gen, n, k=2)
    trace = build_dc3_trace(seq)
    sample = [p for p in range(n) if p % 3]
    assert sorted(trace.sample_positions) == sample
    assert sorted(trace.sample_ranks.values()) == list(range(1, len(sample) + 1))
    assert sorted(trace.full_rank_1based) == list(range(1, n + 1))
    sa = build_dc3(seq).sa.tolist()
    for p in range(n):
        assert trace.full_rank_1based[p] == sa.index(p) + 1
    # sample ranks follow the true order of the sample suffixes
    by_rank = sorted(trace.sample_ranks, key=trace.sample_ranks.get)
    assert by_rank == [p for p in sa if p % 3]
    assert trace.nonsample_order == [p for p in sa if p % 3 == 0]


@pytest.mark.parametrize(
    "sa, rank",
    [
        (PAPER_SA, [1, 4, 6, 8, 10, 2, 5, 7, 9, 0, 3]),
        ([0], [0]),
        ([3, 2, 1, 0], [3, 2, 1, 0]),
    ],
)
def test_rank_array(sa, rank):
    assert rank_array(SuffixArray(np.array(sa))).rank.tolist() == rank


def test_rank_is_table3_minus_one(paper_text):
    trace = build_dc3_trace(paper_text)
    rank = rank_array(build_dc3(paper_text)).rank.tolist()
    assert rank == [r - 1 for r in trace.full_rank_1based]


def test_verify_accepts_paper_table(paper_text):
    verdict = verify(SuffixArray(np.array(PAPER_SA)), paper_text)
    assert verdict.ok and bool(verdict)


def test_verify_ordering_violation():
    verdict = verify(SuffixArray(np.array([0, 1])), encode_sequence("ta"))
    assert not verdict
    assert verdict.index == 0


def test_verify_duplicate_entry(paper_text):
    bad = list(PAPER_SA)
    bad[4] = bad[3]
    verdict = verify(SuffixArray(np.array(bad)), paper_text)
    assert not verdict.ok
    assert verdict.index == 4
    assert "permutation" in verdict.reason


def test_verify_out_of_range(paper_text):
    bad = list(PAPER_SA)
    bad[2] = 11
    assert verify(SuffixArray(np.array(bad)), paper_text).index == 2


def test_verify_length_mismatch(paper_text):
    with pytest.raises(LengthMismatch):
        verify(SuffixArray(np.array([0])), paper_text)


def test_empty_text_rejected():
    with pytest.raises(EmptySequence):
        build_dc3(encode_sequence("a")[:0])


def test_text_too_long():
    class Huge:
        n = MAX_TEXT_LEN

    with pytest.raises(TextTooLong):
        build_dc3(Huge())


@pytest.mark.parametrize("n", list(range(1, 40)))
@pytest.mark.parametrize("k", [1, 2, 4])
def test_every_small_length_against_oracle(n, k):
    # covers all n mod 3 cases, and the unary text forces deep recursion
    gen = np.random.default_rng(1000 * k + n)
    seq = random_codes(gen, n, k)
    assert build_dc3(seq) == build_naive(seq)


def test_dc3_matches_string_oracle(rng):
    for _ in range(200):
        text = oracles.random_dna(rng, rng.randint(1, 300), rng.choice(["acgt", "ac", "a", "at"]))
        assert build_dc3(encode_sequence(text)).sa.tolist() == oracles.suffix_array(text)


@given(st.text(alphabet="acgt", min_size=1, max_size=400))
@settings(max_examples=200, deadline=None)
def test_dc3_property(text):
    seq = encode_sequence(text)
    sa = build_dc3(seq)
    assert verify(sa, seq)
    assert sorted(sa.sa.tolist()) == list(range(len(text)))
    assert sa == build_naive(seq)


def test_periodic_texts():
    for unit in ["ac", "acg", "aacg", "acgtacgtt"]:
        text = unit * (2000 // len(unit))
        seq = encode_sequence(text)
        assert build_dc3(seq) == build_naive(seq)
