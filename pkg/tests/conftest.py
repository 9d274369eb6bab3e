import random

import numpy as np
import pytest

from gsmatch import EncodedSequence, encode_sequence

PAPER_TEXT = "acggtacgtac"
PAPER_SA = [9, 0, 5, 10, 1, 6, 2, 7, 3, 8, 4]

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def paper_text() -> EncodedSequence:
    return encode_sequence(PAPER_TEXT)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240531)


def random_codes(gen: np.random.Generator, n: int, k: int = 4) -> EncodedSequence:
    return EncodedSequence(gen.integers(1, k + 1, n).astype(np.uint8))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
