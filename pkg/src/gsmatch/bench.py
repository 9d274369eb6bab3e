"""Timing harness: input, kernel and output phases of one matching run.

* input  - read the reference (FASTA or GSA1 index) and build whatever the
           backend needs; a query FASTA, when given, is read here too
* kernel - :func:`match_batch` alone
* output - serialize the per-query TSV

Generated query sets are produced between the input and kernel phases and
are not timed, so input time does not depend on the number of queries.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import IO, Iterable

import numpy as np

from .batch import BatchResult, MatcherConfig, match_batch
from .errors import WorkloadMismatch
from .io import MAGIC, read_fasta, read_index, read_queries
from .querygen import QueryGenSpec, gen_queries
from .sequence import EncodedSequence
from .suffix_array import SuffixArray, build_dc3, rank_array
from .suffix_tree import build_tree

logger = logging.getLogger(__name__)

BACKEND_ALIASES = {"sa": "suffix_array", "tree": "suffix_tree", "suffix_array": "suffix_array", "suffix_tree": "suffix_tree"}
CSV_COLUMNS = ["backend", "n", "Q", "m", "workers", "tile_len", "input_s", "kernel_s", "output_s", "total_s", "index_bytes"]
DEFAULT_SWEEP = [512 * 2**k for k in range(9)]  # 512 .. 131072


@dataclass
class TimingReport:
    backend: str
    n: int
    Q: int
    m: int | None
    workers: int
    tile_len: int
    input_s: float
    kernel_s: float
    output_s: float
    index_bytes: int = 0
    hits: int = 0
    meta: dict = field(default_factory=dict)

    @property
    def total_s(self) -> float:
        return self.input_s + self.kernel_s + self.output_s

    def to_dict(self) -> dict:
        return {**asdict(self), "total_s": self.total_s}

    def csv_row(self) -> dict:
        d = self.to_dict()
        return {k: d[k] for k in CSV_COLUMNS}


@dataclass
class LoadedIndex:
    text: EncodedSequence
    index: object
    sa: SuffixArray  # suffix order, used for positions and tree rank normalization
    index_bytes: int
    rank: object = None


def _is_index_file(path: str | os.PathLike) -> bool:
    with open(path, "rb") as fh:
        return fh.read(len(MAGIC)) == MAGIC


def load_reference(path: str | os.PathLike, prefix_len: int | None = None, policy: str = "error") -> EncodedSequence:
    if _is_index_file(path):
        text = read_index(path)[1]
    else:
        text = read_fasta(path, policy=policy)[1]
    if prefix_len is not None and prefix_len < text.n:
        text = text[:prefix_len]
    return text


def prepare_index(text: EncodedSequence, backend: str, sa: SuffixArray | None = None) -> LoadedIndex:
    backend = BACKEND_ALIASES[backend]
    if backend == "suffix_array":
        sa = sa if sa is not None else build_dc3(text)
        return LoadedIndex(text, sa, sa, sa.nbytes + text.codes.nbytes)
    tree = build_tree(text)
    order = SuffixArray(tree.suffix_order())
    return LoadedIndex(text, tree, order, tree.nbytes + tree.text.nbytes, rank_array(order))


def write_tsv(out: IO[str], res: BatchResult, sa: SuffixArray, positions: bool = False) -> None:
    flat = res.flat
    header = "query_id\tlb\trb\tcount"
    out.write(header + ("\tpositions\n" if positions else "\n"))
    lbs, rbs = flat[0::2].tolist(), flat[1::2].tolist()
    lines = []
    for q, (lb, rb) in enumerate(zip(lbs, rbs)):
        count = rb - lb + 1 if lb >= 0 else 0
        line = f"{q}\t{lb}\t{rb}\t{count}"
        if positions:
            pos = sa.sa[lb : rb + 1].tolist() if lb >= 0 else []
            line += "\t" + ",".join(map(str, pos))
        lines.append(line)
    out.write("\n".join(lines))
    out.write("\n")


def run_bench(
    reference_path: str | os.PathLike,
    queries: QueryGenSpec | str | os.PathLike,
    backend: str = "suffix_array",
    workers: int = 1,
    tile_len: int = 64,
    tsv_path: str | os.PathLike | None = None,
    positions: bool = False,
    prefix_len: int | None = None,
) -> TimingReport:
    """Time one run end to end. ``reference_path`` may be FASTA or GSA1."""
    backend = BACKEND_ALIASES[backend]
    cfg = MatcherConfig(workers=workers, tile_len=tile_len, backend=backend)

    t0 = time.perf_counter()
    sa = None
    if _is_index_file(reference_path) and backend == "suffix_array" and prefix_len is None:
        sa, text = read_index(reference_path)
    else:
        text = load_reference(reference_path, prefix_len)
    loaded = prepare_index(text, backend, sa)
    meta: dict = {"reference": str(reference_path)}
    if not isinstance(queries, QueryGenSpec):
        _, qset = read_queries(queries)
        meta["queries"] = str(queries)
    t1 = time.perf_counter()
    if isinstance(queries, QueryGenSpec):
        qset = gen_queries(text, queries)
        meta["query_spec"] = queries.to_dict()

    t2 = time.perf_counter()
    res = match_batch(loaded.index, text, qset, cfg, rank=loaded.rank)
    t3 = time.perf_counter()

    if tsv_path is None:
        write_tsv(io.StringIO(), res, loaded.sa, positions)
    else:
        with open(tsv_path, "w", newline="") as fh:
            write_tsv(fh, res, loaded.sa, positions)
    t4 = time.perf_counter()

    report = TimingReport(
        backend=backend,
        n=text.n,
        Q=len(qset),
        m=qset.uniform_length,
        workers=workers,
        tile_len=tile_len,
        input_s=t1 - t0,
        kernel_s=t3 - t2,
        output_s=t4 - t3,
        index_bytes=loaded.index_bytes,
        hits=res.hits(),
        meta=meta,
    )
    logger.info(
        "%s n=%d Q=%d workers=%d: input %.3fs kernel %.3fs output %.3fs (%d hits)",
        backend, report.n, report.Q, workers, report.input_s, report.kernel_s, report.output_s, report.hits,
    )
    return report


def speedup_report(baseline: TimingReport, candidate: TimingReport) -> dict[str, float]:
    """Per-phase ``baseline / candidate`` time ratios for the same workload."""
    for attr in ("Q", "m", "n"):
        if getattr(baseline, attr) != getattr(candidate, attr):
            raise WorkloadMismatch(
                f"{attr} differs: {getattr(baseline, attr)} vs {getattr(candidate, attr)}"
            )

    def ratio(a: float, b: float) -> float:
        if b == 0:
            return 1.0 if a == 0 else math.inf
        return a / b

    return {
        "input": ratio(baseline.input_s, candidate.input_s),
        "kernel": ratio(baseline.kernel_s, candidate.kernel_s),
        "output": ratio(baseline.output_s, candidate.output_s),
        "total": ratio(baseline.total_s, candidate.total_s),
    }


def run_sweep(
    reference_path: str | os.PathLike,
    sweep: Iterable[int],
    backends: Iterable[str],
    workers: int = 1,
    tile_len: int = 64,
    length: int = 1024,
    mix_ratio: float = 0.5,
    mutation_rate: float = 0.0,
    seed: int = 0,
    prefix_len: int | None = None,
    out_dir: str | os.PathLike | None = None,
) -> list[TimingReport]:
    reports = []
    for backend in backends:
        for q in sweep:
            spec = QueryGenSpec(q, length, mix_ratio, mutation_rate, seed)
            tsv = None
            if out_dir is not None:
                tsv = Path(out_dir) / f"{BACKEND_ALIASES[backend]}_Q{q}.tsv"
            reports.append(
                run_bench(reference_path, spec, backend, workers, tile_len, tsv_path=tsv, prefix_len=prefix_len)
            )
    return reports


def write_csv(path: str | os.PathLike, reports: Iterable[TimingReport]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for r in reports:
            writer.writerow(r.csv_row())


def write_report(path: str | os.PathLike, reports: list[TimingReport]) -> None:
    doc = {"runs": [r.to_dict() for r in reports]}
    by_workload: dict[tuple, dict[str, TimingReport]] = {}
    for r in reports:
        by_workload.setdefault((r.n, r.Q, r.m), {})[r.backend] = r
    comparisons = []
    for (n, q, m), runs in sorted(by_workload.items()):
        if {"suffix_array", "suffix_tree"} <= runs.keys():
            tree, sa = runs["suffix_tree"], runs["suffix_array"]
            comparisons.append(
                {
                    "n": n,
                    "Q": q,
                    "m": m,
                    "tree_over_sa_time": speedup_report(tree, sa),
                    "sa_over_tree_bytes": sa.index_bytes / tree.index_bytes,
                }
            )
    doc["backend_comparisons"] = comparisons
    Path(path).write_text(json.dumps(doc, indent=2, default=_json_default))


def _json_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj)!r}")
