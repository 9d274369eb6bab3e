"""Seeded query-set generation mirroring a mixed-source read workload.

A fraction ``mix_ratio`` of the queries are windows cut from the reference
at uniform offsets, each symbol then substituted with probability
``mutation_rate``. The rest are uniform random DNA and stand in for reads
from an unrelated genome. The two kinds are shuffled together.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .errors import ReferenceTooShort
from .sequence import EncodedSequence, QuerySet

RNG_ALGORITHM = "numpy.random.PCG64"
DEFAULT_QUERY_LEN = 1024
DEFAULT_MIX_RATIO = 0.5
_CHUNK = 4096


@dataclass(frozen=True)
class QueryGenSpec:
    count: int
    length: int = DEFAULT_QUERY_LEN
    mix_ratio: float = DEFAULT_MIX_RATIO
    mutation_rate: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.length < 1:
            raise ValueError("length must be >= 1")
        if not 0.0 <= self.mix_ratio <= 1.0:
            raise ValueError("mix_ratio must lie in [0, 1]")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError("mutation_rate must lie in [0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @property
    def sampled_count(self) -> int:
        return int(self.mix_ratio * self.count)

    def to_dict(self) -> dict:
        return {**asdict(self), "rng": RNG_ALGORITHM}


def gen_queries(reference: EncodedSequence, spec: QueryGenSpec) -> QuerySet:
    """Generate ``spec.count`` queries of ``spec.length`` symbols.

    The output depends only on ``reference`` and ``spec``.
    """
    q, m = spec.count, spec.length
    k = spec.sampled_count
    if k and reference.n < m:
        raise ReferenceTooShort(f"reference of {reference.n} symbols cannot supply windows of {m}")
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    slots = rng.permutation(q)
    block = np.empty((q, m), dtype=np.uint8)

    windows = np.lib.stride_tricks.sliding_window_view(reference.codes, m) if k else None
    for c0 in range(0, k, _CHUNK):
        rows = slots[c0 : min(c0 + _CHUNK, k)]
        sub = windows[rng.integers(0, reference.n - m + 1, size=rows.size)]
        if spec.mutation_rate > 0:
            hit = rng.random(sub.shape) < spec.mutation_rate
            # shift by 1..3 so a substitution always changes the symbol
            shift = rng.integers(1, 4, size=sub.shape, dtype=np.uint8)
            sub[hit] = (sub[hit] - 1 + shift[hit]) % 4 + 1
        block[rows] = sub
    for c0 in range(k, q, _CHUNK):
        rows = slots[c0 : min(c0 + _CHUNK, q)]
        block[rows] = rng.integers(1, 5, size=(rows.size, m), dtype=np.uint8)
    return QuerySet.uniform(block)
