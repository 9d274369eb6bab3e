import json

import numpy as np
import pytest
from click.testing import CliRunner

from gsmatch import encode_sequence, read_index, read_queries, write_fasta
from gsmatch.cli import main


@pytest.fixture
def workspace(tmp_path):
    gen = np.random.default_rng(8)
    write_fasta(tmp_path / "ref.fa", [("chr", encode_sequence("".join(gen.choice(list("acgt"), 5000))))])
    return tmp_path


def run(*args):
    result = CliRunner().invoke(main, [str(a) for a in args], catch_exceptions=False)
    assert result.exit_code == 0, result.output
    return result


def test_build_and_search(workspace):
    run("build", "--reference", workspace / "ref.fa", "--out", workspace / "ix.gsa")
    sa, text = read_index(workspace / "ix.gsa")
    assert text.n == 5000
    run("gen-queries", "--reference", workspace / "ref.fa", "--count", 40, "--length", 20, "--mix-ratio", 0.5,
        "--mutation-rate", 0, "--seed", 3, "--out", workspace / "q.fa")
    ids, qs = read_queries(workspace / "q.fa")
    assert len(qs) == 40 and qs.uniform_length == 20
    outputs = []
    for backend, workers in [("sa", 1), ("sa", 4), ("tree", 2)]:
        out = workspace / f"{backend}{workers}.tsv"
        result = run("search", "--index", workspace / "ix.gsa", "--queries", workspace / "q.fa", "--backend", backend,
                     "--workers", workers, "--tile-len", 8, "--out", out, "--positions")
        report = json.loads(result.stderr.strip().splitlines()[-1])
        assert report["Q"] == 40
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]
    header, *rows = outputs[0].decode().splitlines()
    assert header == "query_id\tlb\trb\tcount\tpositions"
    assert sum(int(r.split("\t")[3]) > 0 for r in rows) >= 20


def test_search_generated(workspace):
    run("build", "--reference", workspace / "ref.fa", "--out", workspace / "ix.gsa")
    run("search", "--index", workspace / "ix.gsa", "--queries", "gen:30:16:1.0:0:5", "--out", workspace / "g.tsv")
    rows = (workspace / "g.tsv").read_text().splitlines()[1:]
    assert len(rows) == 30 and all(int(r.split("\t")[3]) > 0 for r in rows)


def test_bench(workspace):
    run("bench", "--reference", workspace / "ref.fa", "--sweep", "8,32", "--backend", "both", "--length", 64,
        "--report", workspace / "r.json", "--csv", workspace / "r.csv", "--tsv-dir", workspace / "tsv")
    lines = (workspace / "r.csv").read_text().splitlines()
    assert lines[0] == "backend,n,Q,m,workers,tile_len,input_s,kernel_s,output_s,total_s,index_bytes"
    assert len(lines) == 5
    doc = json.loads((workspace / "r.json").read_text())
    assert {r["backend"] for r in doc["runs"]} == {"suffix_array", "suffix_tree"}


def test_bad_generated_spec(workspace):
    run("build", "--reference", workspace / "ref.fa", "--out", workspace / "ix.gsa")
    result = CliRunner().invoke(main, ["search", "--index", str(workspace / "ix.gsa"), "--queries", "gen:x",
                                       "--out", str(workspace / "x.tsv")])
    assert result.exit_code != 0
