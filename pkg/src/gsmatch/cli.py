"""Command line entry point: ``gsmatch build|search|gen-queries|bench``."""

from __future__ import annotations

import json
import logging
import os
import sys

import click

from . import bench as _bench
from .io import read_fasta, write_index, write_queries
from .querygen import DEFAULT_MIX_RATIO, QueryGenSpec, gen_queries
from .suffix_array import build_dc3


def _parse_generated(value: str) -> QueryGenSpec:
    # gen:COUNT[:LENGTH[:MIX[:MUTATION[:SEED]]]]
    parts = value.split(":")[1:]
    if not parts or len(parts) > 5:
        raise click.BadParameter("expected gen:COUNT[:LENGTH[:MIX[:MUTATION[:SEED]]]]")
    casts = (int, int, float, float, int)
    try:
        args = [cast(p) for cast, p in zip(casts, parts)]
        return QueryGenSpec(*args)
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from exc


def _parse_sweep(value: str) -> list[int]:
    try:
        sweep = [int(v) for v in value.replace(" ", "").split(",") if v]
    except ValueError as exc:
        raise click.BadParameter(f"sweep must be comma-separated integers: {exc}") from exc
    if not sweep or min(sweep) < 1:
        raise click.BadParameter("sweep needs at least one positive query count")
    return sweep


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log phase timings to stderr.")
def main(verbose: bool) -> None:
    """Exact DNA matching with suffix arrays and suffix trees."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, format="%(levelname)s %(message)s")


@main.command()
@click.option("--reference", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--policy", type=click.Choice(["error", "skip"]), default="error", show_default=True,
              help="What to do with non-ACGT symbols.")
def build(reference: str, out: str, policy: str) -> None:
    """Build a GSA1 suffix-array index from the first FASTA record."""
    record, text = read_fasta(reference, policy=policy)
    size = write_index(build_dc3(text), text, out)
    click.echo(f"{record}: n={text.n} -> {out} ({size} bytes)")


@main.command()
@click.option("--index", "index_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--queries", required=True, help="Query FASTA path, or gen:COUNT[:LENGTH[:MIX[:MUTATION[:SEED]]]].")
@click.option("--backend", type=click.Choice(["sa", "tree"]), default="sa", show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--tile-len", type=click.IntRange(min=1), default=64, show_default=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--positions", is_flag=True, help="Add a positions column.")
def search(index_path: str, queries: str, backend: str, workers: int, tile_len: int, out: str, positions: bool) -> None:
    """Match a query batch against an index and write the result TSV."""
    spec = _parse_generated(queries) if queries.startswith("gen:") else queries
    report = _bench.run_bench(index_path, spec, backend, workers, tile_len, tsv_path=out, positions=positions)
    click.echo(json.dumps(report.to_dict()), err=True)


@main.command("gen-queries")
@click.option("--reference", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--count", required=True, type=click.IntRange(min=1))
@click.option("--length", type=click.IntRange(min=1), default=1024, show_default=True)
@click.option("--mix-ratio", type=click.FloatRange(0, 1), default=DEFAULT_MIX_RATIO, show_default=True)
@click.option("--mutation-rate", type=click.FloatRange(0, 1), default=0.0, show_default=True)
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
def gen_queries_cmd(reference: str, count: int, length: int, mix_ratio: float, mutation_rate: float, seed: int, out: str) -> None:
    """Write a seeded query set as multi-record FASTA."""
    text = _bench.load_reference(reference)
    qset = gen_queries(text, QueryGenSpec(count, length, mix_ratio, mutation_rate, seed))
    write_queries(out, qset)
    click.echo(f"{len(qset)} queries of length {length} -> {out}")


@main.command("bench")
@click.option("--reference", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--sweep", default=",".join(map(str, _bench.DEFAULT_SWEEP)), show_default=True,
              help="Comma-separated query counts.")
@click.option("--backend", type=click.Choice(["sa", "tree", "both"]), default="both", show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--tile-len", type=click.IntRange(min=1), default=64, show_default=True)
@click.option("--length", type=click.IntRange(min=1), default=1024, show_default=True)
@click.option("--mix-ratio", type=click.FloatRange(0, 1), default=DEFAULT_MIX_RATIO, show_default=True)
@click.option("--mutation-rate", type=click.FloatRange(0, 1), default=0.0, show_default=True)
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)
@click.option("--prefix-len", type=click.IntRange(min=1), default=1_000_000, show_default=True,
              help="Use only this many leading nucleotides of the reference.")
@click.option("--report", "report_path", required=True, type=click.Path(dir_okay=False))
@click.option("--csv", "csv_path", required=True, type=click.Path(dir_okay=False))
@click.option("--tsv-dir", type=click.Path(file_okay=False), default=None, help="Keep each run's result TSV here.")
def bench_cmd(reference, sweep, backend, workers, tile_len, length, mix_ratio, mutation_rate, seed, prefix_len,
              report_path, csv_path, tsv_dir) -> None:
    """Sweep query-set sizes and record input/kernel/output timings."""
    backends = ["sa", "tree"] if backend == "both" else [backend]
    if tsv_dir is not None:
        os.makedirs(tsv_dir, exist_ok=True)
    reports = _bench.run_sweep(
        reference, _parse_sweep(sweep), backends, workers, tile_len, length, mix_ratio, mutation_rate, seed,
        prefix_len, tsv_dir,
    )
    _bench.write_csv(csv_path, reports)
    _bench.write_report(report_path, reports)
    for r in reports:
        click.echo(
            f"{r.backend:12s} Q={r.Q:<8d} input={r.input_s:.3f}s kernel={r.kernel_s:.3f}s "
            f"output={r.output_s:.3f}s total={r.total_s:.3f}s bytes={r.index_bytes}"
        )


if __name__ == "__main__":
    sys.exit(main())
